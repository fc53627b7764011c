// Acceptance suite: one line per criterion, nonzero exit on any failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <sstream>
#include <string>

#include <boost/math/distributions/chi_squared.hpp>

#include "braid_oracle.hpp"
#include "loxogen/automaton.hpp"
#include "loxogen/counting.hpp"
#include "loxogen/experiments.hpp"
#include "loxogen/freegroup.hpp"
#include "loxogen/garside.hpp"
#include "loxogen/geometry.hpp"
#include "loxogen/psl2z.hpp"
#include "support.hpp"

namespace {

using namespace loxogen;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass;
  std::string detail;
};

int failures = 0;

void criterion(int id, const char* title, double limit_seconds, const std::function<Outcome()>& body) {
  const auto t0 = Clock::now();
  Outcome o;
  try {
    o = body();
  } catch (const std::exception& e) {
    o = {false, std::string("exception: ") + e.what()};
  }
  const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
  if (limit_seconds > 0 && secs > limit_seconds) {
    o.pass = false;
    o.detail += " (over the " + std::to_string(limit_seconds) + " s limit)";
  }
  if (!o.pass) ++failures;
  std::printf("[%s] C%-2d %-34s %8.3f s  %s\n", o.pass ? "PASS" : "FAIL", id, title, secs,
              o.detail.c_str());
  std::fflush(stdout);
}

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

Word psl(const char* text) { return parse_word(psl2z::alphabet(), text); }

std::uint64_t dist(const psl2z::FareyVertex& u, const psl2z::FareyVertex& v) {
  return psl2z::farey_distance(u, v);
}

bool loxodromic(const psl2z::ProjMatrix& m) { return m.abs_trace() > 2; }

// Every rigid accepted word of length <= max_length, with its matrix.
void for_each_rigid(unsigned max_length,
                    const std::function<void(const Word&, const psl2z::ProjMatrix&)>& visit) {
  const Automaton aut = psl2z::build_automaton();
  for (unsigned l = 1; l <= max_length; ++l)
    enumerate_sphere_rigidity(aut, l, [&](const Word& w, bool rigid) {
      if (rigid) visit(w, psl2z::evaluate(w));
    });
}

Outcome silver_ratio() {
  const Automaton aut = psl2z::build_automaton();
  const StateSet acc = accessible_subautomaton(aut);
  const double rate = growth_rate(transition_matrix(aut, acc)).rate;
  const double err = std::abs(rate - (1 + std::sqrt(2.0)));
  return {err < 1e-9, "lambda = " + fmt("%.15f", rate) + ", |lambda - (1+sqrt2)| = " + fmt("%.2e", err)};
}

Outcome limit_proportions() {
  const Automaton aut = psl2z::build_automaton();
  const Word b = psl("B");
  const double prefix = to_double(prefix_proportion(aut, b, 30));
  const State e = *aut.find_state("X¬A B");
  const double loop = to_double(end_state_proportion(aut, b, e, 30));
  const double target = 1 / (4 * std::sqrt(2.0));
  const bool ok = std::abs(prefix - 0.25) < 1e-3 && std::abs(loop - target) < 1e-2;
  return {ok, "prefix B = " + fmt("%.6f", prefix) + ", end state X¬A B = " + fmt("%.6f", loop) +
                  " (target " + fmt("%.6f", target) + ")"};
}

Outcome rigid_lower_bound() {
  const Automaton aut = psl2z::build_automaton();
  const double bound = 1 / (16 * std::sqrt(2.0));
  double worst = 1.0;
  bool ok = true;
  const unsigned oracle_bound = static_cast<unsigned>(aut.state_count()) + 1;
  for (unsigned l = 8; l <= 16; ++l) {
    std::uint64_t total = 0, rigid = 0, oracle_mismatch = 0;
    enumerate_sphere_rigidity(aut, l, [&](const Word& w, bool r) {
      ++total;
      if (r) ++rigid;
      if (l <= 10 && r != loxogen::testing::powers_accepted(aut, w, oracle_bound)) ++oracle_mismatch;
    });
    if (BigInt(total) != count_sphere(aut, l) || oracle_mismatch) ok = false;
    const double p = static_cast<double>(rigid) / static_cast<double>(total);
    worst = std::min(worst, p);
    if (!(p >= bound)) ok = false;
  }
  return {ok, "min rigid proportion over l = 8..16: " + fmt("%.6f", worst) + " >= " + fmt("%.6f", bound)};
}

Outcome displacement_fact() {
  const psl2z::FareyVertex base(0, 1);
  const auto image = psl2z::act(psl2z::evaluate(psl("(Ab)^6")), base);
  const auto t0 = Clock::now();
  const std::uint64_t d = dist(base, image);
  const double us = std::chrono::duration<double, std::micro>(Clock::now() - t0).count();
  const std::uint64_t oracle = psl2z::farey_distance_oracle(base, image);
  const bool ok = d == 6 && oracle == 6 && us < 1000;
  return {ok, "d(0/1, " + image.to_string() + ") = " + std::to_string(d) + " (" + fmt("%.1f", us) +
                  " us), BFS oracle = " + std::to_string(oracle)};
}

Outcome claims_a_b() {
  const psl2z::FareyVertex base(0, 1);
  std::uint64_t checked = 0, violations = 0;
  for_each_rigid(10, [&](const Word& w, const psl2z::ProjMatrix& m) {
    if (loxodromic(m)) return;
    ++checked;
    psl2z::ProjMatrix g = m;
    for (unsigned n = 1; n <= 50; ++n, g = g * m)
      if (dist(base, psl2z::act(g, base)) > 3) {
        ++violations;
        break;
      }
    for (std::size_t i = 0; i < w.size(); ++i) {
      psl2z::ProjMatrix s;
      for (std::size_t j = i; j < w.size(); ++j) {
        s = s * psl2z::generator(w[j]);
        if (dist(base, psl2z::act(s, base)) > 5) {
          ++violations;
          return;
        }
      }
    }
  });
  return {violations == 0 && checked > 0,
          std::to_string(checked) + " rigid non-loxodromic words, " + std::to_string(violations) +
              " violations"};
}

Outcome axis_condition() {
  const psl2z::FareyVertex base(0, 1);
  std::uint64_t checked = 0, violations = 0;
  for_each_rigid(8, [&](const Word&, const psl2z::ProjMatrix& m) {
    if (!loxodromic(m)) return;
    ++checked;
    psl2z::ProjMatrix g = m;
    for (unsigned k = 1; k <= 5; ++k, g = g * m) {
      const auto back = psl2z::act(g.inverse(), base), fwd = psl2z::act(g, base);
      if (dist(back, base) + dist(base, fwd) > dist(back, fwd) + 2) {
        ++violations;
        break;
      }
    }
  });
  return {violations == 0 && checked > 0,
          std::to_string(checked) + " rigid loxodromic words, " + std::to_string(violations) +
              " violations"};
}

Outcome main_theorem_instance() {
  ExperimentConfig cfg;
  cfg.l_min = 2;
  cfg.l_max = 12;
  const ExperimentReport r = run_genericity(cfg);
  bool ok = r.rows.size() == 11;
  for (const auto& row : r.rows)
    if (!row.p_rigid_lox || *row.p_rigid_lox <= 0) ok = false;
  const auto min = r.min_rigid_lox_proportion();
  ok = ok && min && *min > 0;
  return {ok, "running min of rigid-and-loxodromic proportion over l = 2..12: " +
                  (min ? to_decimal(*min, 6) : std::string("none")) + ", geometry violations " +
                  std::to_string(r.total_violations())};
}

Outcome garside_facts() {
  bool ok = true;
  std::ostringstream detail;
  for (unsigned n = 3; n <= 4; ++n) {
    const Automaton aut = garside::build_automaton(n);
    const std::size_t fact = n == 3 ? 6 : 24;
    const std::size_t generators = aut.interior_states().size();
    const StateSet acc = accessible_subautomaton(aut);
    const auto rec = recurrence_index(aut, acc);
    const bool positive5 = transition_matrix(aut, acc).power(5).is_positive();
    ok = ok && generators == fact - 1 && acc.size() == fact - 2 && rec && *rec <= 5 && positive5;
    detail << "n=" << n << ": " << generators << " generator states, " << acc.size()
           << " accessible, recurrence " << (rec ? std::to_string(*rec) : "none") << "; ";
  }
  return {ok, detail.str()};
}

Outcome garside_oracle() {
  using loxogen::testing::ArtinWord;
  loxogen::testing::BraidClasses classes;
  const Automaton aut = garside::build_automaton(3);
  // Left-weighted words by braid length, for the exhaustive search.
  std::map<unsigned, std::vector<Word>> by_length;
  for (unsigned l = 1; l <= 4; ++l)
    for (const Word& w : sphere_words(aut, l)) {
      const auto e = loxogen::testing::expand(garside::to_factors(3, w));
      if (e.size() <= 4) by_length[static_cast<unsigned>(e.size())].push_back(w);
    }
  std::uint64_t products = 0, mismatches = 0;
  for (unsigned len = 1; len <= 4; ++len)
    loxogen::testing::for_each_word(2, len, [&](const Word& u) {
      ++products;
      std::vector<garside::Permutation> factors;
      for (Letter x : u) factors.push_back(garside::Permutation::artin(3, x + 1u));
      const Word nf = garside::to_word(3, garside::normal_form(factors));
      const ArtinWord target = classes.canonical(ArtinWord(u.begin(), u.end()));
      std::vector<Word> found;
      for (const Word& w : by_length[len])
        if (classes.canonical(loxogen::testing::expand(garside::to_factors(3, w))) == target)
          found.push_back(w);
      if (found.size() != 1 || found.front() != nf) ++mismatches;
    });
  std::ostringstream detail;
  detail << products << " products, " << mismatches << " mismatches; sphere vs distinct:";
  bool ok = mismatches == 0;
  for (unsigned l = 1; l <= 6; ++l) {
    std::set<ArtinWord> distinct;
    for (const Word& w : sphere_words(aut, l))
      distinct.insert(classes.canonical(loxogen::testing::expand(garside::to_factors(3, w))));
    const BigInt sphere = count_sphere(aut, l);
    detail << ' ' << sphere << '/' << distinct.size();
    if (sphere != distinct.size()) ok = false;
  }
  return {ok, detail.str()};
}

Outcome free_group() {
  const Automaton aut = freegroup::build_automaton(2);
  const freegroup::TreeBackend tree(2);
  bool ok = true;
  for (unsigned l = 1; l <= 10; ++l)
    if (count_sphere(aut, l) != 4 * boost::multiprecision::pow(BigInt(3), l - 1)) ok = false;
  std::uint64_t words = 0, disagreements = 0, lox_bad = 0;
  for (unsigned l = 1; l <= 8; ++l)
    enumerate_sphere_rigidity(aut, l, [&](const Word& w, bool rigid) {
      ++words;
      const bool cyc = freegroup::is_cyclically_reduced(w);
      bool axis = true;
      Word g;
      for (unsigned k = 1; k <= 5; ++k) {
        g = tree.compose(g, w);
        const Word back = tree.inverse(g);
        if (tree.dist(back, {}) + tree.dist({}, g) != tree.dist(back, g)) axis = false;
      }
      if (rigid != cyc || cyc != axis) ++disagreements;
      const Word out = freegroup::loxodromize(w);
      if (tree.dist(w, out) > 1 || !is_rigid_word(aut, out) ||
          tree.classify_exact(out) != IsometryKind::Loxodromic)
        ++lox_bad;
    });
  ok = ok && disagreements == 0 && lox_bad == 0;
  return {ok, "sphere closed form l <= 10; " + std::to_string(words) + " words, " +
                  std::to_string(disagreements) + " rigidity/axis disagreements, " +
                  std::to_string(lox_bad) + " bad loxodromizations"};
}

psl2z::FareyVertex random_vertex(std::mt19937_64& rng, long max_height) {
  for (;;) {
    const long q = static_cast<long>(rng() % static_cast<unsigned long>(max_height + 1));
    const long span = max_height - q;
    const long p = static_cast<long>(rng() % static_cast<unsigned long>(2 * span + 1)) - span;
    if ((p == 0 && q == 0) || std::gcd(p, q) != 1) continue;
    return psl2z::FareyVertex(p, q);
  }
}

Outcome farey_cross_validation() {
  std::vector<psl2z::FareyVertex> grid;
  for (long q = 0; q <= 30; ++q)
    for (long p = -(30 - q); p <= 30 - q; ++p)
      if (std::gcd(p, q) == 1) grid.emplace_back(p, q);
  std::uint64_t pairs = 0, grid_bad = 0;
  for (const auto& u : grid) {
    // All targets have height <= 30; a height bound of 120 covers every
    // geodesic between them (ladder vertices stay below h(u) + h(v) + 2).
    const psl2z::FareyBallSearch ball(u, 120);
    for (const auto& v : grid) {
      ++pairs;
      const auto d = ball.distance(v);
      if (!d || *d != dist(u, v)) ++grid_bad;
    }
  }
  std::mt19937_64 rng(20240601);
  std::uint64_t random_bad = 0, bfs_checked = 0;
  for (int i = 0; i < 10000; ++i) {
    const auto u = random_vertex(rng, 1000), v = random_vertex(rng, 1000);
    const auto d = dist(u, v);
    if (d != psl2z::farey_distance_ladder(u, v)) ++random_bad;
    if (i % 100 == 0) {
      ++bfs_checked;
      if (d != psl2z::farey_distance_oracle(u, v)) ++random_bad;
    }
  }
  return {grid_bad == 0 && random_bad == 0,
          std::to_string(pairs) + " grid pairs (" + std::to_string(grid_bad) +
              " discrepancies); 10^4 random pairs vs ladder BFS, " + std::to_string(bfs_checked) +
              " vs height-bounded BFS (" + std::to_string(random_bad) + " discrepancies)"};
}

Outcome sampler() {
  const Automaton aut = psl2z::build_automaton();
  const std::vector<Word> sphere = sphere_words(aut, 5);
  std::map<Word, std::size_t> index;
  for (std::size_t i = 0; i < sphere.size(); ++i) index[sphere[i]] = i;
  const UniformSampler s(aut, 5);
  const int draws = 100000;
  auto run = [&](std::uint64_t seed, std::vector<std::uint64_t>& hist, std::string& bytes) {
    std::mt19937_64 rng(seed);
    hist.assign(sphere.size(), 0);
    std::ostringstream out;
    for (int i = 0; i < draws; ++i) {
      const Word w = s.sample(rng);
      auto it = index.find(w);
      if (it == index.end()) throw std::runtime_error("sample outside the sphere");
      ++hist[it->second];
      out << format_word(aut.alphabet(), w) << '\n';
    }
    bytes = out.str();
  };
  std::vector<std::uint64_t> hist, hist2;
  std::string bytes, bytes2;
  run(12345, hist, bytes);
  run(12345, hist2, bytes2);
  const double expected = static_cast<double>(draws) / static_cast<double>(sphere.size());
  double chi2 = 0;
  for (auto c : hist) chi2 += (c - expected) * (c - expected) / expected;
  const boost::math::chi_squared dist_chi(static_cast<double>(sphere.size() - 1));
  const double q999 = boost::math::quantile(dist_chi, 0.999);
  const bool ok = chi2 < q999 && bytes == bytes2;
  return {ok, "chi2 = " + fmt("%.2f", chi2) + " < " + fmt("%.2f", q999) + " (df " +
                  std::to_string(sphere.size() - 1) + "), reproducible bytes: " +
                  (bytes == bytes2 ? "yes" : "no")};
}

Outcome avoidance_decay() {
  const Automaton aut = psl2z::build_automaton();
  const double lambda = growth_rate(transition_matrix(aut, accessible_subautomaton(aut))).rate;
  const double avoid = avoidance_growth_rate(aut, psl("(Ab)^6")).rate;
  return {lambda - avoid > 1e-6, "avoidance rate " + fmt("%.13f", avoid) + ", margin " +
                                     fmt("%.3e", lambda - avoid)};
}

}  // namespace

int main() {
  criterion(1, "silver ratio", 1, silver_ratio);
  criterion(2, "limit proportions", 1, limit_proportions);
  criterion(3, "rigid lower bound l=8..16", 120, rigid_lower_bound);
  criterion(4, "displacement of (AB')^6", 0, displacement_fact);
  criterion(5, "claims A and B, l<=10", 300, claims_a_b);
  criterion(6, "axis condition, l<=8", 0, axis_condition);
  criterion(7, "rigid loxodromic proportion", 0, main_theorem_instance);
  criterion(8, "Garside automaton facts", 10, garside_facts);
  criterion(9, "Garside normal form oracle", 0, garside_oracle);
  criterion(10, "free group closed forms", 0, free_group);
  criterion(11, "Farey metric cross-validation", 0, farey_cross_validation);
  criterion(12, "uniform sampler", 0, sampler);
  criterion(13, "avoidance decay", 0, avoidance_decay);
  std::printf("%d of 13 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
