#include "loxogen/experiments.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <mutex>
#include <random>
#include <thread>

#include "loxogen/automaton_io.hpp"
#include "loxogen/counting.hpp"
#include "loxogen/freegroup.hpp"
#include "loxogen/garside.hpp"
#include "loxogen/geometry.hpp"
#include "loxogen/psl2z.hpp"

namespace loxogen {

using nlohmann::json;

// ---------------------------------------------------------------------------
// Configuration

BackendSpec BackendSpec::parse(const std::string& text) {
  BackendSpec spec;
  auto number = [&](const std::string& digits) {
    if (digits.empty() || digits.size() > 3 ||
        !std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; }))
      throw InputError("bad backend parameter in '" + text + "'");
    return static_cast<unsigned>(std::stoul(digits));
  };
  if (text == "psl2z") {
    spec.kind = Kind::Psl2z;
  } else if (text.rfind("braid:", 0) == 0) {
    spec.kind = Kind::Braid;
    spec.parameter = number(text.substr(6));
  } else if (text.rfind("free:", 0) == 0) {
    spec.kind = Kind::Free;
    spec.parameter = number(text.substr(5));
  } else if (text.rfind("file:", 0) == 0 && text.size() > 5) {
    spec.kind = Kind::File;
    spec.path = text.substr(5);
  } else {
    throw InputError("unknown backend '" + text + "' (expected psl2z, braid:n, free:k or file:path)");
  }
  return spec;
}

std::string BackendSpec::to_string() const {
  switch (kind) {
    case Kind::Psl2z: return "psl2z";
    case Kind::Braid: return "braid:" + std::to_string(parameter);
    case Kind::Free: return "free:" + std::to_string(parameter);
    case Kind::File: return "file:" + path;
  }
  return "";
}

Automaton backend_automaton(const BackendSpec& spec) {
  switch (spec.kind) {
    case BackendSpec::Kind::Psl2z: return psl2z::build_automaton();
    case BackendSpec::Kind::Braid: return garside::build_automaton(spec.parameter);
    case BackendSpec::Kind::Free: return freegroup::build_automaton(spec.parameter);
    case BackendSpec::Kind::File: return load_automaton(spec.path);
  }
  throw InputError("unknown backend");
}

void ExperimentConfig::validate() const {
  if (l_min < 1) throw InputError("l range must start at 1 or more");
  if (l_min > l_max) throw InputError("empty l range");
  if (mode == SamplingMode::Sample && samples < 1)
    throw InputError("sample mode needs at least one sample");
  if (!(r >= 0)) throw InputError("R must be nonnegative");
  if (horizon < 1) throw InputError("horizon N must be positive");
  if (asymptotic_length < 1) throw InputError("asymptotic length must be positive");
}

json ExperimentConfig::to_json() const {
  json j;
  j["backend"] = backend.to_string();
  j["l_min"] = l_min;
  j["l_max"] = l_max;
  j["mode"] = mode == SamplingMode::Exhaustive ? "exhaustive" : "sample";
  j["samples"] = samples;
  j["seed"] = seed;
  j["R"] = r;
  j["N"] = horizon;
  j["k_max"] = k_max;
  j["check_max_length"] = check_max_length;
  j["geodesic_max_length"] = geodesic_max_length;
  j["budget"] = budget;
  j["asymptotic_length"] = asymptotic_length;
  j["w_rigid"] = w_rigid ? json(*w_rigid) : json(nullptr);
  j["w_far"] = w_far ? json(*w_far) : json(nullptr);
  return j;
}

std::string ExperimentConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : to_json().dump()) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << h;
  return out.str();
}

BudgetExceeded::BudgetExceeded(unsigned l, const BigInt& sphere, std::uint64_t budget)
    : InputError("exhaustive enumeration at l = " + std::to_string(l) + " would visit " +
                 sphere.str() + " words, above the budget of " + std::to_string(budget) +
                 "; use sample mode or raise the budget") {}

// ---------------------------------------------------------------------------
// Census

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

constexpr std::size_t kKeptViolations = 100;
constexpr std::size_t kSampleShards = 8;

struct Tally {
  std::uint64_t examined = 0;
  std::uint64_t rigid = 0;
  std::uint64_t loxodromic = 0;
  std::uint64_t violation_count = 0;
  std::vector<std::string> violations;

  void add_violation(std::string text) {
    ++violation_count;
    if (violations.size() < kKeptViolations) violations.push_back(std::move(text));
  }

  void merge(Tally&& other) {
    examined += other.examined;
    rigid += other.rigid;
    loxodromic += other.loxodromic;
    violation_count += other.violation_count;
    for (auto& v : other.violations)
      if (violations.size() < kKeptViolations) violations.push_back(std::move(v));
  }
};

struct NoGeometry {};

template <class Backend>
void examine(const Backend& backend, const Automaton& aut, const ExperimentConfig& cfg,
             const Word& w, bool rigid, Tally& tally) {
  ++tally.examined;
  if constexpr (!std::is_same_v<Backend, NoGeometry>) {
    if (w.size() <= cfg.geodesic_max_length)
      if (auto v = geodesic_words_violation(backend, w, cfg.r))
        tally.add_violation(format_word(aut.alphabet(), w) + ": geodesic-words: triple (" +
                            std::to_string(v->i) + ", " + std::to_string(v->m) + ", " +
                            std::to_string(v->j) + ")");
  }
  if (!rigid) return;
  ++tally.rigid;
  if constexpr (!std::is_same_v<Backend, NoGeometry>) {
    IsometryKind kind;
    if (w.size() <= cfg.check_max_length) {
      RigidGeometryOptions opts;
      opts.r = cfg.r;
      opts.horizon = cfg.horizon;
      opts.k_max = cfg.k_max;
      opts.classify.horizon = cfg.horizon;
      const auto report = check_rigid_geometry(backend, aut, w, opts);
      kind = report.isometry.kind;
      for (const auto& v : report.violations)
        tally.add_violation(format_word(aut.alphabet(), w) + ": " + v.check + ": " + v.detail);
    } else {
      kind = backend.classify_exact(evaluate(backend, w));
    }
    if (kind == IsometryKind::Loxodromic) ++tally.loxodromic;
  }
}

unsigned worker_count(const ExperimentConfig& cfg) {
  unsigned t = cfg.threads ? cfg.threads : std::thread::hardware_concurrency();
  return std::max(1u, t);
}

// Runs job(i) for i in [0, count) on a small pool; results are kept per
// index so merging order is fixed.
template <class Job>
std::vector<Tally> run_shards(std::size_t count, unsigned threads, Job job) {
  std::vector<Tally> out(count);
  std::atomic<std::size_t> next{0};
  std::exception_ptr error;
  std::mutex error_mutex;
  auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= count) return;
      try {
        out[i] = job(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!error) error = std::current_exception();
      }
    }
  };
  const unsigned n = static_cast<unsigned>(std::min<std::size_t>(threads, count));
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < n; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
  return out;
}

template <class Backend>
Tally census_at(const Backend& backend, const Automaton& aut, const ExperimentConfig& cfg,
                unsigned l) {
  const unsigned threads = worker_count(cfg);
  std::vector<Tally> shards;
  if (cfg.mode == SamplingMode::Exhaustive) {
    shards = run_shards(aut.letter_count(), threads, [&](std::size_t first) {
      Tally t;
      enumerate_sphere_rigidity(
          aut, l, [&](const Word& w, bool rigid) { examine(backend, aut, cfg, w, rigid, t); },
          static_cast<Letter>(first));
      return t;
    });
  } else {
    const UniformSampler sampler(aut, l);
    shards = run_shards(kSampleShards, threads, [&](std::size_t shard) {
      std::seed_seq seq{static_cast<std::uint32_t>(cfg.seed),
                        static_cast<std::uint32_t>(cfg.seed >> 32), l,
                        static_cast<unsigned>(shard)};
      std::mt19937_64 rng(seq);
      const std::uint64_t n =
          cfg.samples / kSampleShards + (shard < cfg.samples % kSampleShards ? 1 : 0);
      Tally t;
      for (std::uint64_t i = 0; i < n; ++i) {
        const Word w = sampler.sample(rng);
        examine(backend, aut, cfg, w, is_rigid_word(aut, w), t);
      }
      return t;
    });
  }
  Tally total;
  for (auto& s : shards) total.merge(std::move(s));
  return total;
}

template <class Backend>
std::vector<ReportRow> census(const Backend& backend, const Automaton& aut,
                              const ExperimentConfig& cfg) {
  constexpr bool geometric = !std::is_same_v<Backend, NoGeometry>;
  if (cfg.mode == SamplingMode::Exhaustive)
    for (unsigned l = 1; l <= cfg.l_max; ++l) {
      const BigInt size = count_sphere(aut, l);
      if (size > cfg.budget) throw BudgetExceeded(l, size, cfg.budget);
    }

  std::vector<ReportRow> rows;
  BigInt ball = 1;
  // Sums of sphere size times proportion, for the ball statistics; the
  // identity is the length-0 sphere and is neither rigid nor loxodromic.
  BigRational rigid_mass = 0, lox_mass = 0;
  for (unsigned l = 1; l <= cfg.l_max; ++l) {
    const auto t0 = Clock::now();
    ReportRow row;
    row.l = l;
    row.sphere = count_sphere(aut, l);
    ball += row.sphere;
    row.ball = ball;
    if (row.sphere == 0) {
      row.examined = 0;
      row.rigid = 0;
      if (geometric) {
        row.rigid_loxodromic = BigInt(0);
        row.p_rigid_lox = BigRational(0);
      }
    } else {
      Tally t = census_at(backend, aut, cfg, l);
      row.examined = t.examined;
      row.rigid = t.rigid;
      row.p_rigid = BigRational(BigInt(t.rigid), BigInt(t.examined));
      if (geometric) {
        row.rigid_loxodromic = BigInt(t.loxodromic);
        row.p_rigid_lox = BigRational(BigInt(t.loxodromic), BigInt(t.examined));
      }
      if (cfg.mode == SamplingMode::Sample) {
        const double n = static_cast<double>(t.examined);
        auto se = [n](const BigRational& p) {
          const double q = to_double(p);
          return std::sqrt(q * (1 - q) / n);
        };
        row.se_rigid = se(row.p_rigid);
        if (row.p_rigid_lox) row.se_rigid_lox = se(*row.p_rigid_lox);
      }
      row.violation_count = t.violation_count;
      row.violations = std::move(t.violations);
    }
    rigid_mass += BigRational(row.sphere) * row.p_rigid;
    row.ball_p_rigid = rigid_mass / BigRational(ball);
    if (geometric) {
      lox_mass += BigRational(row.sphere) * *row.p_rigid_lox;
      row.ball_p_rigid_lox = lox_mass / BigRational(ball);
    }
    row.runtime_seconds = seconds_since(t0);
    if (l >= cfg.l_min) rows.push_back(std::move(row));
  }
  return rows;
}

json rational_json(const BigRational& q) {
  return json{{"exact", to_string(q)}, {"decimal", to_decimal(q, 12)}};
}

json optional_rational(const std::optional<BigRational>& q) {
  return q ? rational_json(*q) : json(nullptr);
}

json certificate_json(const std::optional<LimitCertificate>& c) {
  if (!c) return nullptr;
  return json{{"label", c->label},
              {"l", c->l},
              {"at_l", rational_json(c->at_l)},
              {"at_l_plus_10", rational_json(c->at_l10)},
              {"cauchy_difference", c->cauchy_difference()}};
}

}  // namespace

double LimitCertificate::cauchy_difference() const {
  return std::abs(to_double(at_l10 - at_l));
}

std::uint64_t ExperimentReport::total_violations() const {
  std::uint64_t n = 0;
  for (const auto& row : rows) n += row.violation_count;
  return n;
}

std::optional<BigRational> ExperimentReport::min_rigid_lox_proportion() const {
  std::optional<BigRational> best;
  for (const auto& row : rows)
    if (row.l >= 2 && row.p_rigid_lox && (!best || *row.p_rigid_lox < *best))
      best = *row.p_rigid_lox;
  return best;
}

ExperimentReport run_genericity(const ExperimentConfig& cfg) {
  cfg.validate();
  const auto t0 = Clock::now();
  ExperimentReport report;
  report.config = cfg;
  const Automaton aut = backend_automaton(cfg.backend);
  switch (cfg.backend.kind) {
    case BackendSpec::Kind::Psl2z:
      report.rows = census(psl2z::FareyBackend{}, aut, cfg);
      break;
    case BackendSpec::Kind::Free:
      report.rows = census(freegroup::TreeBackend(cfg.backend.parameter), aut, cfg);
      break;
    default:
      report.rows = census(NoGeometry{}, aut, cfg);
      break;
  }
  report.asymptotics = run_asymptotics(cfg);
  report.runtime_seconds = seconds_since(t0);
  return report;
}

AsymptoticsReport run_asymptotics(const ExperimentConfig& cfg) {
  cfg.validate();
  const Automaton aut = backend_automaton(cfg.backend);
  const Alphabet& alpha = aut.alphabet();
  AsymptoticsReport a;
  const StructureReport s = check_anf_hypothesis(aut);
  a.dominated = s.dominated;
  a.recurrence_index = s.recurrence;
  a.accessible_states = s.accessible.size();
  a.complement_rate = s.complement_rate;
  a.lambda = s.accessible_rate;
  if (!s.accessible.empty())
    a.lambda_residual = growth_rate(transition_matrix(aut, s.accessible)).residual;
  a.full_rate = language_growth_rate(aut).rate;
  if (s.witness) {
    a.witness = format_word(alpha, s.witness->word);
    a.witness_end_state = aut.state_name(s.witness->end);
  }

  std::optional<std::string> w_rigid = cfg.w_rigid;
  if (!w_rigid && cfg.backend.kind == BackendSpec::Kind::Psl2z) w_rigid = "B";
  if (!w_rigid) w_rigid = a.witness;
  if (w_rigid) {
    const Word w = parse_word(alpha, *w_rigid);
    if (w.empty() || !is_rigid_word(aut, w)) throw InputError("w_rigid '" + *w_rigid + "' is not rigid");
    a.w_rigid = format_word(alpha, w);
    const State e = aut.run(aut.start(), w);
    a.loop_state = aut.state_name(e);
    const unsigned l = std::max<unsigned>(cfg.asymptotic_length, static_cast<unsigned>(w.size()));
    LimitCertificate prefix{"prefix " + *a.w_rigid, l, prefix_proportion(aut, w, l),
                            prefix_proportion(aut, w, l + 10)};
    LimitCertificate loop{"end state " + *a.loop_state + " after prefix " + *a.w_rigid, l,
                          end_state_proportion(aut, w, e, l),
                          end_state_proportion(aut, w, e, l + 10)};
    a.rigid_lower_bound = LimitCertificate{"rigid lower bound", l, prefix.at_l * loop.at_l,
                                           prefix.at_l10 * loop.at_l10};
    a.prefix = std::move(prefix);
    a.loop_return = std::move(loop);
  }

  std::optional<std::string> w_far = cfg.w_far;
  if (!w_far && cfg.backend.kind == BackendSpec::Kind::Psl2z) w_far = "(Ab)^6";
  if (w_far) {
    const Word w = parse_word(alpha, *w_far);
    if (w.empty()) throw InputError("w_far must be nonempty");
    a.w_far = format_word(alpha, w);
    a.avoidance_rate = avoidance_growth_rate(aut, w).rate;
  }
  return a;
}

// ---------------------------------------------------------------------------
// Output

json to_json(const AsymptoticsReport& a) {
  json bounds;
  bounds["w_rigid"] = a.w_rigid ? json(*a.w_rigid) : json(nullptr);
  bounds["loop_state"] = a.loop_state ? json(*a.loop_state) : json(nullptr);
  bounds["prefix"] = certificate_json(a.prefix);
  bounds["loop_return"] = certificate_json(a.loop_return);
  bounds["rigid_lower_bound"] = certificate_json(a.rigid_lower_bound);
  bounds["w_far"] = a.w_far ? json(*a.w_far) : json(nullptr);
  bounds["avoidance_rate"] = a.avoidance_rate ? json(*a.avoidance_rate) : json(nullptr);
  bounds["avoidance_margin"] =
      a.avoidance_rate ? json(a.lambda - *a.avoidance_rate) : json(nullptr);
  return json{{"lambda", a.lambda},
              {"lambda_residual", a.lambda_residual},
              {"full_rate", a.full_rate},
              {"dominated", a.dominated},
              {"recurrence_index", a.recurrence_index ? json(*a.recurrence_index) : json(nullptr)},
              {"accessible_states", a.accessible_states},
              {"complement_rate", a.complement_rate},
              {"witness", a.witness ? json(*a.witness) : json(nullptr)},
              {"witness_end_state", a.witness_end_state ? json(*a.witness_end_state) : json(nullptr)},
              {"bounds", bounds}};
}

json to_json(const ExperimentReport& r) {
  json config = r.config.to_json();
  config["hash"] = r.config.hash();
  json rows = json::array();
  json row_times = json::array();
  for (const auto& row : r.rows) {
    json j;
    j["l"] = row.l;
    j["sphere"] = row.sphere.str();
    j["ball"] = row.ball.str();
    j["examined"] = row.examined.str();
    j["rigid"] = row.rigid.str();
    j["rigid_loxodromic"] = row.rigid_loxodromic ? json(row.rigid_loxodromic->str()) : json(nullptr);
    j["p_rigid"] = rational_json(row.p_rigid);
    j["p_rigid_lox"] = optional_rational(row.p_rigid_lox);
    j["ball_p_rigid"] = rational_json(row.ball_p_rigid);
    j["ball_p_rigid_lox"] = optional_rational(row.ball_p_rigid_lox);
    if (row.se_rigid) j["se_rigid"] = *row.se_rigid;
    if (row.se_rigid_lox) j["se_rigid_lox"] = *row.se_rigid_lox;
    j["violation_count"] = row.violation_count;
    j["violations"] = row.violations;
    rows.push_back(std::move(j));
    row_times.push_back(row.runtime_seconds);
  }
  json out;
  out["config"] = std::move(config);
  out["rows"] = std::move(rows);
  out["asymptotics"] = r.asymptotics ? to_json(*r.asymptotics) : json(nullptr);
  const auto min_lox = r.min_rigid_lox_proportion();
  out["summary"] = {{"total_violations", r.total_violations()},
                    {"min_p_rigid_lox", optional_rational(min_lox)}};
  out["runtime"] = {{"total_seconds", r.runtime_seconds}, {"row_seconds", row_times}};
  return out;
}

std::string to_csv(const ExperimentReport& r) {
  std::ostringstream out;
  out << "l,sphere,ball,examined,rigid,rigid_loxodromic,p_rigid,p_rigid_lox,ball_p_rigid,"
         "ball_p_rigid_lox,violations\n";
  for (const auto& row : r.rows) {
    out << row.l << ',' << row.sphere << ',' << row.ball << ',' << row.examined << ','
        << row.rigid << ',' << (row.rigid_loxodromic ? row.rigid_loxodromic->str() : "") << ','
        << to_decimal(row.p_rigid) << ',' << (row.p_rigid_lox ? to_decimal(*row.p_rigid_lox) : "")
        << ',' << to_decimal(row.ball_p_rigid) << ','
        << (row.ball_p_rigid_lox ? to_decimal(*row.ball_p_rigid_lox) : "") << ','
        << row.violation_count << '\n';
  }
  return out.str();
}

void write_outputs(const ExperimentReport& r) {
  if (!r.config.json_output.empty()) {
    std::ofstream out(r.config.json_output);
    if (!out) throw std::runtime_error("cannot write " + r.config.json_output);
    out << to_json(r).dump(2) << '\n';
  }
  if (!r.config.csv_output.empty()) {
    std::ofstream out(r.config.csv_output);
    if (!out) throw std::runtime_error("cannot write " + r.config.csv_output);
    out << to_csv(r);
  }
}

}  // namespace loxogen
