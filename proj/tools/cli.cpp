#include "cli.hpp"

#include <CLI11.hpp>
#include <memory>
#include <ostream>

#include "loxogen/automaton_io.hpp"
#include "loxogen/counting.hpp"
#include "loxogen/experiments.hpp"
#include "loxogen/freegroup.hpp"
#include "loxogen/geometry.hpp"
#include "loxogen/psl2z.hpp"

namespace loxogen::cli {

namespace {

using nlohmann::json;

struct Options {
  std::string automaton_file;
  bool as_json = false;
  std::string backend = "psl2z";
  unsigned l_min = 1;
  unsigned l_max = 8;
  std::string mode = "exhaustive";
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  double r = 1.0;
  unsigned horizon = 50;
  unsigned k_max = 5;
  unsigned check_max_length = 10;
  unsigned geodesic_max_length = 8;
  std::uint64_t budget = 10'000'000;
  unsigned asymptotic_length = 30;
  std::string w_rigid;
  std::string w_far;
  unsigned threads = 0;
  std::string json_output;
  std::string csv_output;
  std::string word;
  std::string from;
  std::string to;
  bool oracle = false;
};

void add_experiment_flags(CLI::App* cmd, Options& o) {
  cmd->add_option("--backend", o.backend, "psl2z, braid:n, free:k or file:path");
  cmd->add_option("--lmin", o.l_min, "smallest word length");
  cmd->add_option("--lmax", o.l_max, "largest word length");
  cmd->add_option("--mode", o.mode, "exhaustive or sample")
      ->check(CLI::IsMember({"exhaustive", "sample"}));
  cmd->add_option("--samples", o.samples, "samples per length in sample mode");
  cmd->add_option("--seed", o.seed, "random seed");
  cmd->add_option("--R", o.r, "geodesic-words constant R");
  cmd->add_option("--N", o.horizon, "orbit horizon for bounded-orbit checks");
  cmd->add_option("--kmax", o.k_max, "largest power in the axis check");
  cmd->add_option("--check-max-length", o.check_max_length,
                  "longest words that get the per-word geometric checks");
  cmd->add_option("--geodesic-max-length", o.geodesic_max_length,
                  "longest words that get the geodesic-words check");
  cmd->add_option("--budget", o.budget, "largest sphere enumerated exhaustively");
  cmd->add_option("--asymptotic-length", o.asymptotic_length,
                  "length at which limit proportions are evaluated");
  cmd->add_option("--w-rigid", o.w_rigid, "rigid word for the lower-bound synthesis");
  cmd->add_option("--w-far", o.w_far, "word whose avoidance rate is reported");
  cmd->add_option("--threads", o.threads, "worker threads (0: all cores)");
  cmd->add_option("--json", o.json_output, "write the JSON report to this file");
  cmd->add_option("--csv", o.csv_output, "write the CSV table to this file");
}

ExperimentConfig make_config(const Options& o) {
  ExperimentConfig cfg;
  cfg.backend = BackendSpec::parse(o.backend);
  cfg.l_min = o.l_min;
  cfg.l_max = o.l_max;
  cfg.mode = o.mode == "sample" ? SamplingMode::Sample : SamplingMode::Exhaustive;
  cfg.samples = o.samples;
  cfg.seed = o.seed;
  cfg.r = o.r;
  cfg.horizon = o.horizon;
  cfg.k_max = o.k_max;
  cfg.check_max_length = o.check_max_length;
  cfg.geodesic_max_length = o.geodesic_max_length;
  cfg.budget = o.budget;
  cfg.asymptotic_length = o.asymptotic_length;
  if (!o.w_rigid.empty()) cfg.w_rigid = o.w_rigid;
  if (!o.w_far.empty()) cfg.w_far = o.w_far;
  cfg.threads = o.threads;
  cfg.json_output = o.json_output;
  cfg.csv_output = o.csv_output;
  return cfg;
}

int cmd_analyze(const Options& o, std::ostream& out) {
  const Automaton aut = load_automaton(o.automaton_file);
  const StructureReport s = check_anf_hypothesis(aut);
  auto names = [&](const StateSet& set) {
    std::vector<std::string> v;
    for (State q : set) v.push_back(aut.state_name(q));
    return v;
  };
  json j;
  j["states"] = aut.state_count();
  j["letters"] = aut.letter_count();
  j["accessible"] = names(s.accessible);
  j["recurrence_index"] = s.recurrence ? json(*s.recurrence) : json(nullptr);
  j["accessible_rate"] = s.accessible_rate;
  j["complement_rate"] = s.complement_rate;
  j["dominated"] = s.dominated;
  if (s.witness) {
    j["witness"] = format_word(aut.alphabet(), s.witness->word);
    j["witness_end_state"] = aut.state_name(s.witness->end);
  } else {
    j["witness"] = nullptr;
    j["witness_end_state"] = nullptr;
  }
  j["automatic_normal_form_hypothesis"] = s.anf_hypothesis();
  if (o.as_json) {
    out << j.dump(2) << '\n';
    return 0;
  }
  out << "states: " << aut.state_count() << " (" << aut.letter_count() << " letters)\n";
  out << "accessible: " << s.accessible.size() << " states\n";
  out << "recurrence index: " << (s.recurrence ? std::to_string(*s.recurrence) : "none") << '\n';
  out << "accessible growth rate: " << s.accessible_rate << '\n';
  out << "complement growth rate: " << s.complement_rate << '\n';
  out << "dominated: " << (s.dominated ? "yes" : "no") << '\n';
  out << "rigid witness: "
      << (s.witness ? format_word(aut.alphabet(), s.witness->word) + " (end state " +
                          aut.state_name(s.witness->end) + ")"
                    : std::string("none"))
      << '\n';
  out << "automatic normal form hypothesis: " << (s.anf_hypothesis() ? "holds" : "fails") << '\n';
  return 0;
}

int cmd_genericity(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = make_config(o);
  const ExperimentReport report = run_genericity(cfg);
  write_outputs(report);
  if (cfg.json_output.empty()) {
    out << to_json(report).dump(2) << '\n';
  } else {
    for (const auto& row : report.rows)
      out << "l=" << row.l << " sphere=" << row.sphere << " rigid=" << row.rigid
          << (row.rigid_loxodromic ? " rigid_loxodromic=" + row.rigid_loxodromic->str() : "")
          << " violations=" << row.violation_count << '\n';
  }
  return report.total_violations() == 0 ? 0 : 1;
}

int cmd_asymptotics(const Options& o, std::ostream& out) {
  const ExperimentConfig cfg = make_config(o);
  json j;
  j["config"] = cfg.to_json();
  j["config"]["hash"] = cfg.hash();
  j["asymptotics"] = to_json(run_asymptotics(cfg));
  out << j.dump(2) << '\n';
  return 0;
}

template <class Backend>
int print_class(const Backend& b, const Options& o, std::ostream& out) {
  ClassifyOptions opts;
  opts.horizon = o.horizon;
  const Word w = parse_word(b.alphabet(), o.word);
  out << to_string(classify(b, w, opts).kind) << '\n';
  return 0;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const BackendSpec spec = BackendSpec::parse(o.backend);
  if (spec.kind == BackendSpec::Kind::Psl2z) return print_class(psl2z::FareyBackend{}, o, out);
  if (spec.kind == BackendSpec::Kind::Free)
    return print_class(freegroup::TreeBackend(spec.parameter), o, out);
  throw InputError("backend " + o.backend + " has no geometric action to classify against");
}

int cmd_distance(const Options& o, std::ostream& out) {
  if (o.backend != "psl2z") throw InputError("distance is available for --backend psl2z only");
  const auto u = psl2z::parse_vertex(o.from);
  const auto v = psl2z::parse_vertex(o.to);
  out << (o.oracle ? psl2z::farey_distance_oracle(u, v) : psl2z::farey_distance(u, v)) << '\n';
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Normal-form automata, genericity censuses and isometric actions", "loxogen"};
  app.require_subcommand(1);
  Options o;

  auto* analyze = app.add_subcommand("analyze", "structure report for an automaton file");
  analyze->add_option("file", o.automaton_file, "automaton interchange file")->required();
  analyze->add_flag("--json", o.as_json, "print JSON");

  auto* genericity = app.add_subcommand("genericity", "rigid / loxodromic census per length");
  add_experiment_flags(genericity, o);

  auto* asymptotics = app.add_subcommand("asymptotics", "growth rate and limit proportions");
  add_experiment_flags(asymptotics, o);

  auto* classify_cmd = app.add_subcommand("classify", "isometry type of a word");
  classify_cmd->add_option("--backend", o.backend, "psl2z or free:k");
  classify_cmd->add_option("--word", o.word, "word, e.g. Ab or (Ab)^6")->required();
  classify_cmd->add_option("--N", o.horizon, "orbit horizon");

  auto* distance = app.add_subcommand("distance", "Farey graph distance");
  distance->add_option("--backend", o.backend, "psl2z");
  distance->add_option("--from", o.from, "vertex p/q (1/0 is infinity)")->required();
  distance->add_option("--to", o.to, "vertex p/q")->required();
  distance->add_flag("--oracle", o.oracle, "use the breadth-first search oracle");

  std::vector<const char*> argv{"loxogen"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  try {
    if (*analyze) return cmd_analyze(o, out);
    if (*genericity) return cmd_genericity(o, out);
    if (*asymptotics) return cmd_asymptotics(o, out);
    if (*classify_cmd) return cmd_classify(o, out);
    if (*distance) return cmd_distance(o, out);
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  }
  return 2;
}

}  // namespace loxogen::cli
