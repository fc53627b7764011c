#include "loxogen/automaton.hpp"

#include <algorithm>
#include <deque>
#include <numeric>
#include <utility>

#include "loxogen/counting.hpp"
#include "loxogen/error.hpp"

namespace loxogen {

// ---------------------------------------------------------------------------
// Alphabet

Alphabet::Alphabet(std::vector<std::string> names) : names_(std::move(names)) {
  if (names_.empty()) throw InputError("alphabet must not be empty");
  if (names_.size() > 0xffff) throw InputError("alphabet too large");
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i].empty()) throw InputError("empty letter name");
    auto [it, inserted] = index_.emplace(names_[i], static_cast<Letter>(i));
    if (!inserted) throw InputError("duplicate letter name '" + names_[i] + "'");
  }
}

const std::string& Alphabet::name(Letter x) const {
  if (x >= names_.size()) throw InputError("letter id out of range");
  return names_[x];
}

std::optional<Letter> Alphabet::find(std::string_view name) const {
  auto it = index_.find(std::string(name));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Letter Alphabet::letter(std::string_view name) const {
  if (auto x = find(name)) return *x;
  throw InputError("unknown letter '" + std::string(name) + "'");
}

// ---------------------------------------------------------------------------
// Automaton

Automaton::Automaton(Alphabet alphabet, std::size_t state_count, State start,
                     State fail, StateSet accept, std::vector<State> table,
                     std::vector<std::string> state_names)
    : alphabet_(std::move(alphabet)),
      state_count_(state_count),
      start_(start),
      fail_(fail),
      accept_(std::move(accept)),
      table_(std::move(table)),
      names_(std::move(state_names)) {
  const std::size_t k = alphabet_.size();
  if (state_count_ < 2) throw InputError("automaton needs start and fail states");
  if (start_ >= state_count_ || fail_ >= state_count_)
    throw InputError("start/fail state out of range");
  if (start_ == fail_) throw InputError("start and fail must differ");
  if (table_.size() != state_count_ * k)
    throw InputError("transition table has wrong size");

  std::sort(accept_.begin(), accept_.end());
  accept_.erase(std::unique(accept_.begin(), accept_.end()), accept_.end());
  accepting_.assign(state_count_, 0);
  for (State s : accept_) {
    if (s >= state_count_) throw InputError("accept state out of range");
    if (s == start_ || s == fail_)
      throw InputError("start and fail states cannot accept");
    accepting_[s] = 1;
  }

  for (std::size_t s = 0; s < state_count_; ++s) {
    for (std::size_t x = 0; x < k; ++x) {
      const State t = table_[s * k + x];
      if (t >= state_count_) throw InputError("transition target out of range");
      if (t == start_) throw InputError("start state must have no incoming arrow");
      if (s == fail_ && t != fail_) throw InputError("fail state must be absorbing");
    }
  }

  if (names_.empty()) {
    names_.reserve(state_count_);
    for (std::size_t s = 0; s < state_count_; ++s) names_.push_back(std::to_string(s));
  } else if (names_.size() != state_count_) {
    throw InputError("state name count mismatch");
  }
}

State Automaton::run(State from, const Word& w) const {
  State s = from;
  for (Letter x : w) {
    if (x >= letter_count()) throw InputError("letter out of alphabet");
    s = next(s, x);
  }
  return s;
}

std::optional<State> Automaton::find_state(std::string_view name) const {
  for (std::size_t s = 0; s < names_.size(); ++s)
    if (names_[s] == name) return static_cast<State>(s);
  return std::nullopt;
}

StateSet Automaton::interior_states() const {
  StateSet out;
  for (State s = 0; s < state_count_; ++s)
    if (s != start_ && s != fail_) out.push_back(s);
  return out;
}

bool Automaton::operator==(const Automaton& other) const {
  return alphabet_ == other.alphabet_ && state_count_ == other.state_count_ &&
         start_ == other.start_ && fail_ == other.fail_ &&
         accept_ == other.accept_ && table_ == other.table_ &&
         names_ == other.names_;
}

// ---------------------------------------------------------------------------
// AutomatonBuilder

AutomatonBuilder::AutomatonBuilder(Alphabet alphabet, std::size_t state_count,
                                   State start, State fail)
    : alphabet_(std::move(alphabet)),
      state_count_(state_count),
      start_(start),
      fail_(fail),
      table_(state_count * alphabet_.size(), fail) {}

AutomatonBuilder& AutomatonBuilder::accept(State s) {
  accept_.push_back(s);
  return *this;
}

AutomatonBuilder& AutomatonBuilder::transition(State from, Letter x, State to) {
  if (from >= state_count_ || x >= alphabet_.size())
    throw InputError("transition source or letter out of range");
  table_[from * alphabet_.size() + x] = to;
  return *this;
}

AutomatonBuilder& AutomatonBuilder::name(State s, std::string n) {
  if (names_.empty()) {
    for (std::size_t i = 0; i < state_count_; ++i) names_.push_back(std::to_string(i));
  }
  if (s >= state_count_) throw InputError("state out of range");
  names_[s] = std::move(n);
  return *this;
}

Automaton AutomatonBuilder::build() const {
  return Automaton(alphabet_, state_count_, start_, fail_, accept_, table_, names_);
}

// ---------------------------------------------------------------------------
// FactorMatcher

FactorMatcher::FactorMatcher(std::size_t letter_count,
                             const std::vector<Word>& factors)
    : letter_count_(letter_count) {
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  // Trie.
  prefixes_.push_back({});
  std::vector<std::size_t> child(letter_count_, kNone);
  match_.push_back(0);
  for (const Word& f : factors) {
    if (f.empty()) throw InputError("banned factor must be nonempty");
    std::size_t node = 0;
    for (Letter x : f) {
      if (x >= letter_count_) throw InputError("banned factor letter out of range");
      std::size_t& c = child[node * letter_count_ + x];
      if (c == kNone) {
        c = prefixes_.size();
        Word p = prefixes_[node];
        p.push_back(x);
        prefixes_.push_back(std::move(p));
        match_.push_back(0);
        child.resize(child.size() + letter_count_, kNone);
      }
      node = child[node * letter_count_ + x];
    }
    match_[node] = 1;
  }

  // Breadth-first failure links, folded straight into the goto table.
  goto_.assign(prefixes_.size() * letter_count_, 0);
  std::vector<std::size_t> link(prefixes_.size(), 0);
  std::deque<std::size_t> queue;
  for (std::size_t x = 0; x < letter_count_; ++x) {
    const std::size_t c = child[x];
    if (c == kNone) {
      goto_[x] = 0;
    } else {
      goto_[x] = c;
      link[c] = 0;
      queue.push_back(c);
    }
  }
  while (!queue.empty()) {
    const std::size_t node = queue.front();
    queue.pop_front();
    if (match_[link[node]]) match_[node] = 1;
    for (std::size_t x = 0; x < letter_count_; ++x) {
      const std::size_t c = child[node * letter_count_ + x];
      if (c == kNone) {
        goto_[node * letter_count_ + x] = goto_[link[node] * letter_count_ + x];
      } else {
        goto_[node * letter_count_ + x] = c;
        link[c] = goto_[link[node] * letter_count_ + x];
        queue.push_back(c);
      }
    }
  }
}

Automaton factor_avoiding_automaton(const Alphabet& alphabet,
                                    const std::vector<Word>& banned) {
  const FactorMatcher matcher(alphabet.size(), banned);
  const std::size_t k = alphabet.size();

  // Matcher nodes reachable by at least one letter, without passing a match.
  std::vector<std::size_t> order;
  std::vector<long> id(matcher.node_count(), -1);
  std::deque<std::size_t> queue{0};
  std::vector<char> seen(matcher.node_count(), 0);
  seen[0] = 1;
  while (!queue.empty()) {
    const std::size_t node = queue.front();
    queue.pop_front();
    for (std::size_t x = 0; x < k; ++x) {
      const std::size_t t = matcher.next(node, static_cast<Letter>(x));
      if (matcher.is_match(t)) continue;
      if (id[t] < 0) {
        id[t] = static_cast<long>(order.size());
        order.push_back(t);
      }
      if (!seen[t]) {
        seen[t] = 1;
        queue.push_back(t);
      }
    }
  }

  // 0 = start, 1 = fail, then the reachable nodes in discovery order.
  const std::size_t n = order.size() + 2;
  AutomatonBuilder b(alphabet, n, 0, 1);
  b.name(0, "start").name(1, "fail");
  auto state_of = [&](std::size_t node) -> State {
    if (matcher.is_match(node)) return 1;
    return static_cast<State>(id[node] + 2);
  };
  for (std::size_t x = 0; x < k; ++x)
    b.transition(0, static_cast<Letter>(x), state_of(matcher.next(0, static_cast<Letter>(x))));
  for (std::size_t i = 0; i < order.size(); ++i) {
    const State s = static_cast<State>(i + 2);
    const Word& p = matcher.prefix(order[i]);
    b.name(s, p.empty() ? std::string("()") : format_word(alphabet, p));
    b.accept(s);
    for (std::size_t x = 0; x < k; ++x)
      b.transition(s, static_cast<Letter>(x),
                   state_of(matcher.next(order[i], static_cast<Letter>(x))));
  }
  return b.build();
}

Automaton trim_unreachable(const Automaton& aut) {
  const std::size_t k = aut.letter_count();
  std::vector<char> reach(aut.state_count(), 0);
  std::deque<State> queue{aut.start()};
  reach[aut.start()] = 1;
  reach[aut.fail()] = 1;
  while (!queue.empty()) {
    const State s = queue.front();
    queue.pop_front();
    for (std::size_t x = 0; x < k; ++x) {
      const State t = aut.next(s, static_cast<Letter>(x));
      if (!reach[t]) {
        reach[t] = 1;
        queue.push_back(t);
      }
    }
  }
  std::vector<State> remap(aut.state_count(), 0);
  std::size_t n = 0;
  for (State s = 0; s < aut.state_count(); ++s)
    if (reach[s]) remap[s] = static_cast<State>(n++);
  AutomatonBuilder b(aut.alphabet(), n, remap[aut.start()], remap[aut.fail()]);
  for (State s = 0; s < aut.state_count(); ++s) {
    if (!reach[s]) continue;
    b.name(remap[s], aut.state_name(s));
    if (aut.is_accept(s)) b.accept(remap[s]);
    for (std::size_t x = 0; x < k; ++x)
      b.transition(remap[s], static_cast<Letter>(x),
                   remap[aut.next(s, static_cast<Letter>(x))]);
  }
  return b.build();
}

Automaton avoidance_product(const Automaton& aut, const Word& pattern) {
  if (pattern.empty()) throw InputError("pattern must be nonempty");
  const FactorMatcher matcher(aut.letter_count(), {pattern});
  const std::size_t k = aut.letter_count();
  const std::size_t m = matcher.node_count();

  // Product ids: 0 = start, 1 = fail, others discovered breadth-first.
  std::vector<long> id(aut.state_count() * m, -1);
  std::vector<std::pair<State, std::size_t>> pairs;
  auto lookup = [&](State q, std::size_t node) -> State {
    if (q == aut.fail() || matcher.is_match(node)) return 1;
    long& slot = id[q * m + node];
    if (slot < 0) {
      slot = static_cast<long>(pairs.size() + 2);
      pairs.emplace_back(q, node);
    }
    return static_cast<State>(slot);
  };

  std::vector<std::vector<State>> rows;
  std::vector<State> start_row;
  for (std::size_t x = 0; x < k; ++x)
    start_row.push_back(lookup(aut.next(aut.start(), static_cast<Letter>(x)),
                               matcher.next(0, static_cast<Letter>(x))));
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto [q, node] = pairs[i];
    std::vector<State> row;
    for (std::size_t x = 0; x < k; ++x)
      row.push_back(lookup(aut.next(q, static_cast<Letter>(x)),
                           matcher.next(node, static_cast<Letter>(x))));
    rows.push_back(std::move(row));
  }

  AutomatonBuilder b(aut.alphabet(), pairs.size() + 2, 0, 1);
  b.name(0, "start").name(1, "fail");
  for (std::size_t x = 0; x < k; ++x) b.transition(0, static_cast<Letter>(x), start_row[x]);
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const State s = static_cast<State>(i + 2);
    const auto [q, node] = pairs[i];
    b.name(s, aut.state_name(q) + "|" + std::to_string(matcher.prefix(node).size()));
    if (aut.is_accept(q)) b.accept(s);
    for (std::size_t x = 0; x < k; ++x) b.transition(s, static_cast<Letter>(x), rows[i][x]);
  }
  return b.build();
}

// ---------------------------------------------------------------------------
// Structural analysis

bool accepts(const Automaton& aut, const Word& w) {
  return aut.is_accept(aut.run(aut.start(), w));
}

std::vector<State> trace(const Automaton& aut, const Word& w) {
  std::vector<State> out;
  out.reserve(w.size() + 1);
  State s = aut.start();
  out.push_back(s);
  for (Letter x : w) {
    if (x >= aut.letter_count()) throw InputError("letter out of alphabet");
    s = aut.next(s, x);
    out.push_back(s);
  }
  return out;
}

namespace {

std::vector<char> forward_reach(const Automaton& aut, State source) {
  std::vector<char> reach(aut.state_count(), 0);
  std::deque<State> queue{source};
  reach[source] = 1;
  while (!queue.empty()) {
    const State s = queue.front();
    queue.pop_front();
    for (std::size_t x = 0; x < aut.letter_count(); ++x) {
      const State t = aut.next(s, static_cast<Letter>(x));
      if (t == aut.fail() || reach[t]) continue;
      reach[t] = 1;
      queue.push_back(t);
    }
  }
  return reach;
}

// Boolean adjacency of the restriction, indexed by position in `states`.
std::vector<std::vector<char>> restricted_adjacency(const Automaton& aut,
                                                    const StateSet& states) {
  const std::size_t n = states.size();
  std::vector<std::vector<char>> adj(n, std::vector<char>(n, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t x = 0; x < aut.letter_count(); ++x) {
      const State t = aut.next(states[i], static_cast<Letter>(x));
      auto it = std::lower_bound(states.begin(), states.end(), t);
      if (it != states.end() && *it == t)
        adj[i][static_cast<std::size_t>(it - states.begin())] = 1;
    }
  }
  return adj;
}

}  // namespace

StateSet accessible_subautomaton(const Automaton& aut) {
  const StateSet interior = aut.interior_states();
  if (interior.empty()) return {};
  std::vector<char> common(aut.state_count(), 1);
  for (State s : interior) {
    const auto reach = forward_reach(aut, s);
    for (std::size_t t = 0; t < common.size(); ++t) common[t] &= reach[t];
  }
  StateSet out;
  for (State s : interior)
    if (common[s]) out.push_back(s);
  return out;
}

std::optional<unsigned> recurrence_index(const Automaton& aut,
                                         const StateSet& states_in) {
  if (states_in.empty()) throw InputError("recurrence_index: empty state set");
  StateSet states = states_in;
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  const std::size_t n = states.size();
  const auto adj = restricted_adjacency(aut, states);

  // Primitive = irreducible + aperiodic. Check both via BFS levels from 0.
  std::vector<long> level(n, -1);
  std::deque<std::size_t> queue{0};
  level[0] = 0;
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    for (std::size_t j = 0; j < n; ++j)
      if (adj[i][j] && level[j] < 0) {
        level[j] = level[i] + 1;
        queue.push_back(j);
      }
  }
  if (std::any_of(level.begin(), level.end(), [](long v) { return v < 0; }))
    return std::nullopt;
  for (std::size_t j = 0; j < n; ++j) {  // every state must also reach 0
    std::vector<char> seen(n, 0);
    std::deque<std::size_t> q{j};
    seen[j] = 1;
    while (!q.empty()) {
      const std::size_t i = q.front();
      q.pop_front();
      for (std::size_t t = 0; t < n; ++t)
        if (adj[i][t] && !seen[t]) {
          seen[t] = 1;
          q.push_back(t);
        }
    }
    if (!seen[0]) return std::nullopt;
  }
  long period = 0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (adj[i][j]) period = std::gcd(period, std::labs(level[i] + 1 - level[j]));
  if (period != 1) return std::nullopt;

  // Wielandt: a primitive n x n matrix has A^l > 0 for some l <= n^2 - 2n + 2.
  const std::size_t bound = n * n - 2 * n + 2;
  std::vector<std::vector<char>> power = adj;
  for (std::size_t l = 1; l <= bound; ++l) {
    bool positive = true;
    for (std::size_t i = 0; i < n && positive; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!power[i][j]) {
          positive = false;
          break;
        }
    if (positive) return static_cast<unsigned>(l);
    std::vector<std::vector<char>> next(n, std::vector<char>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t m = 0; m < n; ++m)
        if (power[i][m])
          for (std::size_t j = 0; j < n; ++j) next[i][j] |= adj[m][j];
    power = std::move(next);
  }
  return std::nullopt;
}

bool is_rigid_word(const Automaton& aut, const Word& w) {
  if (w.empty()) throw InputError("is_rigid_word: empty word");
  // Orbit of the "read w" map starting at start; it becomes periodic within
  // state_count steps.
  std::vector<char> seen(aut.state_count(), 0);
  State s = aut.start();
  for (std::size_t copy = 0; copy <= aut.state_count(); ++copy) {
    s = aut.run(s, w);
    if (s == aut.fail() || !aut.is_accept(s)) return false;
    if (seen[s]) return true;
    seen[s] = 1;
  }
  return true;
}

std::optional<RigidWitness> find_rigid_word(const Automaton& aut) {
  const StateSet accessible = accessible_subautomaton(aut);
  const std::size_t n = aut.state_count();
  const std::size_t k = aut.letter_count();
  std::optional<RigidWitness> best;

  for (State e : accessible) {
    if (!aut.is_accept(e)) continue;
    // BFS over pairs (run from start, run from e); goal is (e, e).
    std::vector<long> parent(n * n, -2);
    std::vector<Letter> via(n * n, 0);
    const std::size_t origin = aut.start() * n + e;
    parent[origin] = -1;
    std::deque<std::size_t> queue{origin};
    std::optional<std::size_t> goal;
    while (!queue.empty() && !goal) {
      const std::size_t cur = queue.front();
      queue.pop_front();
      const State a = static_cast<State>(cur / n);
      const State b = static_cast<State>(cur % n);
      for (std::size_t x = 0; x < k; ++x) {
        const State a2 = aut.next(a, static_cast<Letter>(x));
        const State b2 = aut.next(b, static_cast<Letter>(x));
        if (a2 == aut.fail() || b2 == aut.fail()) continue;
        const std::size_t nxt = a2 * n + b2;
        if (parent[nxt] != -2) continue;
        parent[nxt] = static_cast<long>(cur);
        via[nxt] = static_cast<Letter>(x);
        if (a2 == e && b2 == e) {
          goal = nxt;
          break;
        }
        queue.push_back(nxt);
      }
    }
    if (!goal) continue;
    Word w;
    for (std::size_t cur = *goal; parent[cur] != -1;
         cur = static_cast<std::size_t>(parent[cur]))
      w.push_back(via[cur]);
    std::reverse(w.begin(), w.end());
    if (!best || w.size() < best->word.size()) best = RigidWitness{w, e};
  }
  return best;
}

StructureReport is_dominated(const Automaton& aut) {
  StructureReport report;
  report.accessible = accessible_subautomaton(aut);
  if (report.accessible.empty()) return report;

  report.recurrence = recurrence_index(aut, report.accessible);
  report.accessible_rate =
      growth_rate(transition_matrix(aut, report.accessible)).rate;

  StateSet complement;
  for (State s : aut.interior_states())
    if (!std::binary_search(report.accessible.begin(), report.accessible.end(), s))
      complement.push_back(s);
  report.complement_rate = growth_rate(transition_matrix(aut, complement)).rate;

  constexpr double kMargin = 1e-9;
  report.dominated = report.recurrence.has_value() &&
                     report.accessible_rate > report.complement_rate + kMargin;
  return report;
}

StructureReport check_anf_hypothesis(const Automaton& aut) {
  StructureReport report = is_dominated(aut);
  report.witness = find_rigid_word(aut);
  return report;
}

}  // namespace loxogen
