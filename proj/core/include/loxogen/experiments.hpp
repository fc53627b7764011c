#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "loxogen/automaton.hpp"
#include "loxogen/bigint.hpp"
#include "loxogen/error.hpp"

namespace loxogen {

/// Which group and action an experiment runs on: "psl2z", "braid:n",
/// "free:k" or "file:path" (an automaton file without geometry).
struct BackendSpec {
  enum class Kind { Psl2z, Braid, Free, File };
  Kind kind = Kind::Psl2z;
  unsigned parameter = 0;
  std::string path;

  static BackendSpec parse(const std::string& text);
  std::string to_string() const;
  bool has_geometry() const { return kind == Kind::Psl2z || kind == Kind::Free; }
};

Automaton backend_automaton(const BackendSpec& spec);

enum class SamplingMode { Exhaustive, Sample };

struct ExperimentConfig {
  BackendSpec backend;
  unsigned l_min = 1;
  unsigned l_max = 8;
  SamplingMode mode = SamplingMode::Exhaustive;
  std::uint64_t samples = 10000;
  std::uint64_t seed = 1;
  double r = 1.0;
  /// Orbit horizon N for the bounded-orbit checks.
  unsigned horizon = 50;
  unsigned k_max = 5;
  /// Longest words that get the per-word geometric checks; longer words are
  /// only classified.
  unsigned check_max_length = 10;
  /// Longest words that get the geodesic-words triangle check.
  unsigned geodesic_max_length = 8;
  /// Exhaustive mode refuses spheres larger than this.
  std::uint64_t budget = 10'000'000;
  /// Length at which limit proportions are evaluated (and compared with
  /// this length + 10).
  unsigned asymptotic_length = 30;
  /// Defaults depend on the backend; see resolved_rigid_word.
  std::optional<std::string> w_rigid;
  std::optional<std::string> w_far;
  /// Worker threads; 0 means one per hardware thread.
  unsigned threads = 0;
  std::string json_output;
  std::string csv_output;

  /// Throws InputError on inconsistent settings.
  void validate() const;
  /// Everything that affects results (not output paths or thread count).
  nlohmann::json to_json() const;
  /// FNV-1a of the canonical JSON, as 16 hex digits.
  std::string hash() const;
};

/// Exhaustive enumeration of a sphere above the budget.
class BudgetExceeded : public InputError {
 public:
  BudgetExceeded(unsigned l, const BigInt& sphere, std::uint64_t budget);
};

struct ReportRow {
  unsigned l = 0;
  BigInt sphere;
  BigInt ball;
  /// Words examined: the whole sphere, or the sample size.
  BigInt examined;
  BigInt rigid;
  std::optional<BigInt> rigid_loxodromic;
  BigRational p_rigid;
  std::optional<BigRational> p_rigid_lox;
  BigRational ball_p_rigid;
  std::optional<BigRational> ball_p_rigid_lox;
  /// Binomial standard errors in sample mode.
  std::optional<double> se_rigid;
  std::optional<double> se_rigid_lox;
  std::uint64_t violation_count = 0;
  /// The first violations found, as "word: check: detail".
  std::vector<std::string> violations;
  double runtime_seconds = 0.0;
};

/// Value of a proportion at length l and l + 10, with their difference as a
/// convergence certificate.
struct LimitCertificate {
  std::string label;
  unsigned l = 0;
  BigRational at_l;
  BigRational at_l10;
  double cauchy_difference() const;
};

struct AsymptoticsReport {
  double lambda = 0.0;
  double lambda_residual = 0.0;
  double full_rate = 0.0;
  bool dominated = false;
  std::optional<unsigned> recurrence_index;
  std::size_t accessible_states = 0;
  double complement_rate = 0.0;
  std::optional<std::string> witness;
  std::optional<std::string> witness_end_state;
  std::optional<std::string> w_rigid;
  std::optional<std::string> loop_state;
  std::optional<LimitCertificate> prefix;
  std::optional<LimitCertificate> loop_return;
  /// prefix * loop_return at l and at l + 10.
  std::optional<LimitCertificate> rigid_lower_bound;
  std::optional<std::string> w_far;
  std::optional<double> avoidance_rate;
};

struct ExperimentReport {
  ExperimentConfig config;
  std::vector<ReportRow> rows;
  std::optional<AsymptoticsReport> asymptotics;
  double runtime_seconds = 0.0;

  std::uint64_t total_violations() const;
  /// Smallest rigid-and-loxodromic proportion over rows with l >= 2.
  std::optional<BigRational> min_rigid_lox_proportion() const;
};

ExperimentReport run_genericity(const ExperimentConfig& cfg);
AsymptoticsReport run_asymptotics(const ExperimentConfig& cfg);

nlohmann::json to_json(const AsymptoticsReport& a);
nlohmann::json to_json(const ExperimentReport& r);
/// One row per length with decimal proportions.
std::string to_csv(const ExperimentReport& r);

/// Writes the JSON (and CSV) files named in the config, if any.
void write_outputs(const ExperimentReport& r);

}  // namespace loxogen
