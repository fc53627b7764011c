#include "loxogen/automaton_io.hpp"

#include <fstream>
#include <sstream>

#include "loxogen/error.hpp"

namespace loxogen {

namespace {

using nlohmann::json;

bool default_names(const Automaton& aut) {
  for (std::size_t s = 0; s < aut.state_count(); ++s)
    if (aut.state_name(static_cast<State>(s)) != std::to_string(s)) return false;
  return true;
}

const json& field(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) throw InputError(std::string("automaton file: missing field '") + key + "'");
  return *it;
}

std::size_t as_index(const json& v, const char* what) {
  if (!v.is_number_integer() || v.get<long long>() < 0)
    throw InputError(std::string("automaton file: ") + what + " must be a nonnegative integer");
  return v.get<std::size_t>();
}

State as_state(const json& v, std::size_t state_count, const char* what) {
  const std::size_t s = as_index(v, what);
  if (s >= state_count)
    throw InputError(std::string("automaton file: ") + what + " out of range");
  return static_cast<State>(s);
}

}  // namespace

json automaton_to_json(const Automaton& aut) {
  json j;
  j["alphabet"] = aut.alphabet().names();
  j["states"] = aut.state_count();
  j["start"] = aut.start();
  j["fail"] = aut.fail();
  j["accept"] = aut.accept_states();
  json transitions = json::array();
  for (State s = 0; s < aut.state_count(); ++s)
    for (std::size_t x = 0; x < aut.letter_count(); ++x) {
      const State t = aut.next(s, static_cast<Letter>(x));
      if (t == aut.fail()) continue;
      transitions.push_back(json::array({s, aut.alphabet().name(static_cast<Letter>(x)), t}));
    }
  j["transitions"] = std::move(transitions);
  if (!default_names(aut)) j["names"] = aut.state_names();
  return j;
}

Automaton automaton_from_json(const json& j) {
  if (!j.is_object()) throw InputError("automaton file: top level must be an object");
  const json& alpha = field(j, "alphabet");
  if (!alpha.is_array()) throw InputError("automaton file: alphabet must be a list");
  std::vector<std::string> letters;
  for (const auto& v : alpha) {
    if (!v.is_string()) throw InputError("automaton file: letter names must be strings");
    letters.push_back(v.get<std::string>());
  }
  Alphabet alphabet(std::move(letters));

  const std::size_t n = as_index(field(j, "states"), "states");
  if (n < 2) throw InputError("automaton file: need at least start and fail states");
  const State start = as_state(field(j, "start"), n, "start");
  const State fail = as_state(field(j, "fail"), n, "fail");

  AutomatonBuilder builder(alphabet, n, start, fail);
  const json& accept = field(j, "accept");
  if (!accept.is_array()) throw InputError("automaton file: accept must be a list");
  for (const auto& v : accept) builder.accept(as_state(v, n, "accept state"));

  const json& transitions = field(j, "transitions");
  if (!transitions.is_array()) throw InputError("automaton file: transitions must be a list");
  std::vector<char> seen(n * alphabet.size(), 0);
  for (const auto& t : transitions) {
    if (!t.is_array() || t.size() != 3)
      throw InputError("automaton file: each transition is [from, letter, to]");
    const State from = as_state(t[0], n, "transition source");
    const State to = as_state(t[2], n, "transition target");
    Letter x;
    if (t[1].is_string()) {
      x = alphabet.letter(t[1].get<std::string>());
    } else {
      const std::size_t i = as_index(t[1], "letter");
      if (i >= alphabet.size()) throw InputError("automaton file: letter index out of range");
      x = static_cast<Letter>(i);
    }
    char& mark = seen[from * alphabet.size() + x];
    if (mark) throw InputError("automaton file: duplicate transition (nondeterministic)");
    mark = 1;
    builder.transition(from, x, to);
  }

  if (auto it = j.find("names"); it != j.end()) {
    if (!it->is_array() || it->size() != n)
      throw InputError("automaton file: names must list one name per state");
    for (std::size_t s = 0; s < n; ++s) {
      if (!(*it)[s].is_string()) throw InputError("automaton file: state names must be strings");
      builder.name(static_cast<State>(s), (*it)[s].get<std::string>());
    }
  }
  return builder.build();
}

std::string write_automaton(const Automaton& aut) {
  auto str = [](const std::string& s) { return json(s).dump(); };
  std::ostringstream out;
  out << "{\n  \"alphabet\": [";
  for (std::size_t x = 0; x < aut.letter_count(); ++x)
    out << (x ? ", " : "") << str(aut.alphabet().name(static_cast<Letter>(x)));
  out << "],\n  \"states\": " << aut.state_count() << ",\n  \"start\": " << aut.start()
      << ",\n  \"fail\": " << aut.fail() << ",\n  \"accept\": [";
  const auto& acc = aut.accept_states();
  for (std::size_t i = 0; i < acc.size(); ++i) out << (i ? ", " : "") << acc[i];
  out << "],\n  \"transitions\": [";
  bool first = true;
  for (State s = 0; s < aut.state_count(); ++s)
    for (std::size_t x = 0; x < aut.letter_count(); ++x) {
      const State t = aut.next(s, static_cast<Letter>(x));
      if (t == aut.fail()) continue;
      out << (first ? "\n" : ",\n") << "    [" << s << ", "
          << str(aut.alphabet().name(static_cast<Letter>(x))) << ", " << t << "]";
      first = false;
    }
  out << (first ? "]" : "\n  ]");
  if (!default_names(aut)) {
    out << ",\n  \"names\": [";
    for (std::size_t s = 0; s < aut.state_count(); ++s)
      out << (s ? ", " : "") << str(aut.state_name(static_cast<State>(s)));
    out << "]";
  }
  out << "\n}\n";
  return out.str();
}

Automaton read_automaton(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("automaton file: ") + e.what());
  }
  return automaton_from_json(j);
}

Automaton load_automaton(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open automaton file " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return read_automaton(buf.str());
}

void save_automaton(const std::filesystem::path& path, const Automaton& aut) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << write_automaton(aut);
}

}  // namespace loxogen
