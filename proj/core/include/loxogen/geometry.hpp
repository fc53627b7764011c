#pragma once

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <optional>
#include <string>
#include <type_traits>
#include <vector>

#include "loxogen/automaton.hpp"
#include "loxogen/error.hpp"

namespace loxogen {

enum class IsometryKind { Elliptic, Loxodromic, Undetermined };

std::string to_string(IsometryKind kind);

struct IsometryClass {
  IsometryKind kind = IsometryKind::Undetermined;
  /// d(P, g^m P) / m at the largest horizon m computed.
  double translation_estimate = 0.0;
  /// d(P, g^n P) for n = 1, 2, ...
  std::vector<double> evidence;
};

/// An isometric action of the monoid or group generated by an alphabet on a
/// metric space with a base point. compose(g, h) acts as g after h, so the
/// point reached along a word w is w_1 ... w_k . P.
template <class B>
concept ActionBackend =
    requires(const B& b, const typename B::Element& g, const typename B::Point& p, Letter x) {
      typename B::Point;
      typename B::Element;
      typename B::Distance;
      requires std::is_arithmetic_v<typename B::Distance>;
      { b.alphabet() } -> std::convertible_to<const Alphabet&>;
      { b.base_point() } -> std::convertible_to<typename B::Point>;
      { b.identity() } -> std::convertible_to<typename B::Element>;
      { b.letter(x) } -> std::convertible_to<typename B::Element>;
      { b.compose(g, g) } -> std::convertible_to<typename B::Element>;
      { b.act(g, p) } -> std::convertible_to<typename B::Point>;
      { b.dist(p, p) } -> std::same_as<typename B::Distance>;
    };

template <class B>
concept InvertibleBackend = ActionBackend<B> && requires(const B& b, const typename B::Element& g) {
  { b.inverse(g) } -> std::convertible_to<typename B::Element>;
};

/// Backends that decide the isometry type of an element exactly.
template <class B>
concept ExactlyClassifiedBackend =
    ActionBackend<B> && requires(const B& b, const typename B::Element& g) {
      { b.classify_exact(g) } -> std::same_as<IsometryKind>;
    };

template <ActionBackend B>
typename B::Element evaluate(const B& b, const Word& w) {
  typename B::Element g = b.identity();
  for (Letter x : w) {
    if (x >= b.alphabet().size()) throw InputError("letter outside the backend alphabet");
    g = b.compose(g, b.letter(x));
  }
  return g;
}

template <ActionBackend B>
typename B::Element power(const B& b, typename B::Element g, unsigned n) {
  typename B::Element result = b.identity();
  while (n > 0) {
    if (n & 1u) result = b.compose(result, g);
    n >>= 1;
    if (n > 0) g = b.compose(g, g);
  }
  return result;
}

template <ActionBackend B>
typename B::Distance displacement(const B& b, const typename B::Element& g) {
  const auto p = b.base_point();
  return b.dist(p, b.act(g, p));
}

/// Backends whose elements are words already get these through the element
/// overloads.
template <class B>
concept WordSeparateBackend = ActionBackend<B> && !std::same_as<typename B::Element, Word>;

template <WordSeparateBackend B>
typename B::Distance displacement(const B& b, const Word& w) {
  return displacement(b, evaluate(b, w));
}

/// c = max over letters x of d(P, x.P).
template <ActionBackend B>
typename B::Distance max_generator_displacement(const B& b) {
  typename B::Distance c{};
  for (std::size_t x = 0; x < b.alphabet().size(); ++x)
    c = std::max(c, displacement(b, b.letter(static_cast<Letter>(x))));
  return c;
}

template <ActionBackend B>
double translation_length_estimate(const B& b, const Word& w, unsigned n) {
  if (n == 0) throw InputError("translation length horizon must be positive");
  const auto g = power(b, evaluate(b, w), n);
  return static_cast<double>(displacement(b, g)) / n;
}

struct ClassifyOptions {
  /// Orbit horizon N.
  unsigned horizon = 50;
  /// Orbits staying within this radius count as bounded.
  double ellipticity_radius = 3.0;
  /// Required linear growth d(P, g^n P) >= slope * n; when unset, c / 10.
  std::optional<double> slope;
  /// Horizon for the translation length estimate attached to an exact
  /// classification. Kept short since the elements grow exponentially.
  unsigned exact_estimate_horizon = 8;
};

/// Orbit displacements d(P, g^n P) for n = 1..count.
template <ActionBackend B>
std::vector<double> orbit_displacements(const B& b, const typename B::Element& g,
                                        unsigned count) {
  std::vector<double> out;
  out.reserve(count);
  const auto p = b.base_point();
  auto q = p;
  for (unsigned n = 1; n <= count; ++n) {
    q = b.act(g, q);
    out.push_back(static_cast<double>(b.dist(p, q)));
  }
  return out;
}

/// Isometry type of g. Exact backends decide it directly and never return
/// Undetermined; otherwise the orbit of P up to the horizon decides.
template <ActionBackend B>
IsometryClass classify(const B& b, const typename B::Element& g,
                       const ClassifyOptions& options = {}) {
  IsometryClass out;
  if constexpr (ExactlyClassifiedBackend<B>) {
    out.kind = b.classify_exact(g);
    unsigned m = std::max(1u, std::min(options.horizon, options.exact_estimate_horizon));
    out.evidence = orbit_displacements(b, g, m);
    out.translation_estimate = out.evidence.back() / m;
    // A loxodromic element may need a longer orbit before d(P, g^m P) > 0.
    while (out.kind == IsometryKind::Loxodromic && out.translation_estimate == 0.0 &&
           m < options.horizon) {
      m = std::min(options.horizon, 2 * m);
      out.evidence = orbit_displacements(b, g, m);
      out.translation_estimate = out.evidence.back() / m;
    }
    return out;
  } else {
    const unsigned n = std::max(1u, options.horizon);
    out.evidence = orbit_displacements(b, g, n);
    out.translation_estimate = out.evidence.back() / n;
    const double alpha =
        options.slope ? *options.slope : static_cast<double>(max_generator_displacement(b)) / 10.0;
    const double top = *std::max_element(out.evidence.begin(), out.evidence.end());
    bool linear = alpha > 0.0;
    for (unsigned k = 1; k <= n && linear; ++k) linear = out.evidence[k - 1] >= alpha * k;
    if (top <= options.ellipticity_radius)
      out.kind = IsometryKind::Elliptic;
    else if (linear)
      out.kind = IsometryKind::Loxodromic;
    return out;
  }
}

template <WordSeparateBackend B>
IsometryClass classify(const B& b, const Word& w, const ClassifyOptions& options = {}) {
  return classify(b, evaluate(b, w), options);
}

/// Points p_k = (prefix of length k).P for k = 0..|w|.
template <ActionBackend B>
std::vector<typename B::Point> prefix_points(const B& b, const Word& w) {
  std::vector<typename B::Point> pts;
  pts.reserve(w.size() + 1);
  typename B::Element g = b.identity();
  pts.push_back(b.base_point());
  for (Letter x : w) {
    g = b.compose(g, b.letter(x));
    pts.push_back(b.act(g, b.base_point()));
  }
  return pts;
}

struct TripleViolation {
  std::size_t i, m, j;
};

/// First triple i < m < j with d(p_i, p_m) + d(p_m, p_j) > d(p_i, p_j) + 2R.
template <ActionBackend B>
std::optional<TripleViolation> geodesic_words_violation(const B& b, const Word& w, double r) {
  const auto pts = prefix_points(b, w);
  const std::size_t n = pts.size();
  std::vector<double> d(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      d[i * n + j] = d[j * n + i] = static_cast<double>(b.dist(pts[i], pts[j]));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 2; j < n; ++j)
      for (std::size_t m = i + 1; m < j; ++m)
        if (d[i * n + m] + d[m * n + j] > d[i * n + j] + 2 * r) return TripleViolation{i, m, j};
  return std::nullopt;
}

template <ActionBackend B>
bool check_geodesic_words(const B& b, const Word& w, double r) {
  return !geodesic_words_violation(b, w, r).has_value();
}

/// Largest displacement of a nonempty contiguous subword.
template <ActionBackend B>
double max_subword_displacement(const B& b, const Word& w) {
  double best = 0.0;
  for (std::size_t i = 0; i < w.size(); ++i) {
    typename B::Element g = b.identity();
    for (std::size_t j = i; j < w.size(); ++j) {
      g = b.compose(g, b.letter(w[j]));
      best = std::max(best, static_cast<double>(displacement(b, g)));
    }
  }
  return best;
}

enum class Certificate { CertifiedLoxodromic, Inconclusive };

/// A rigid word with a subword moving P by more than 5R cannot act
/// elliptically, and rigid words never act parabolically.
template <ActionBackend B>
Certificate certify_loxodromic_rigid(const B& b, const Automaton& aut, const Word& w, double r) {
  if (w.empty() || !is_rigid_word(aut, w)) return Certificate::Inconclusive;
  return max_subword_displacement(b, w) > 5 * r ? Certificate::CertifiedLoxodromic
                                                : Certificate::Inconclusive;
}

struct GeometryViolation {
  std::string check;
  std::string detail;
};

struct RigidGeometryReport {
  IsometryClass isometry;
  std::vector<GeometryViolation> violations;
  bool ok() const { return violations.empty(); }
};

struct RigidGeometryOptions {
  double r = 1.0;
  /// Claim A horizon: d(P, w^n P) <= 3R for n <= horizon.
  unsigned horizon = 50;
  unsigned k_max = 5;
  ClassifyOptions classify;
};

/// For a bounded orbit: d(P, w^n P) <= 3R up to the horizon and every
/// subword displaces P by at most 5R. For a loxodromic: the 2R-slack axis
/// condition through P for k <= k_max, two-sided when inverses exist.
template <ActionBackend B>
RigidGeometryReport check_rigid_geometry(const B& b, const Automaton& aut, const Word& w,
                                         const RigidGeometryOptions& options = {}) {
  if (w.empty() || !is_rigid_word(aut, w))
    throw InputError("check_rigid_geometry needs a rigid word");
  RigidGeometryReport report;
  const auto g = evaluate(b, w);
  report.isometry = classify(b, g, options.classify);
  const double r = options.r;
  const auto p = b.base_point();

  if (report.isometry.kind == IsometryKind::Elliptic) {
    const auto orbit = orbit_displacements(b, g, options.horizon);
    for (std::size_t n = 0; n < orbit.size(); ++n)
      if (orbit[n] > 3 * r) {
        report.violations.push_back(
            {"claim-A", "d(P, w^" + std::to_string(n + 1) + " P) = " +
                            std::to_string(static_cast<long long>(orbit[n]))});
        break;
      }
    const double sub = max_subword_displacement(b, w);
    if (sub > 5 * r)
      report.violations.push_back(
          {"claim-B", "subword displacement " + std::to_string(static_cast<long long>(sub))});
  } else if (report.isometry.kind == IsometryKind::Loxodromic) {
    auto gk = b.identity();
    for (unsigned k = 1; k <= options.k_max; ++k) {
      gk = b.compose(gk, g);
      double lhs, rhs;
      if constexpr (InvertibleBackend<B>) {
        const auto back = b.act(b.inverse(gk), p);
        const auto fwd = b.act(gk, p);
        lhs = static_cast<double>(b.dist(back, p)) + static_cast<double>(b.dist(p, fwd));
        rhs = static_cast<double>(b.dist(back, fwd));
      } else {
        const auto fwd = b.act(gk, p);
        const auto fwd2 = b.act(gk, fwd);
        lhs = static_cast<double>(b.dist(p, fwd)) + static_cast<double>(b.dist(fwd, fwd2));
        rhs = static_cast<double>(b.dist(p, fwd2));
      }
      if (lhs > rhs + 2 * r) {
        report.violations.push_back(
            {"axis", "k = " + std::to_string(k) + ": " +
                         std::to_string(static_cast<long long>(lhs)) + " > " +
                         std::to_string(static_cast<long long>(rhs)) + " + 2R"});
        break;
      }
    }
  }
  return report;
}

}  // namespace loxogen
