#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "loxogen/automaton.hpp"
#include "loxogen/bigint.hpp"
#include "loxogen/geometry.hpp"

namespace loxogen::psl2z {

/// Letters of the four-letter alphabet; a and b stand for the inverses of A
/// and B.
enum Generator : Letter { A = 0, Abar = 1, B = 2, Bbar = 3 };

const Alphabet& alphabet();
Letter inverse(Letter x);

/// Integer matrix of determinant 1 up to sign. The stored representative has
/// its first nonzero entry positive.
class ProjMatrix {
 public:
  ProjMatrix() : ProjMatrix(1, 0, 0, 1) {}
  ProjMatrix(BigInt a, BigInt b, BigInt c, BigInt d);

  static ProjMatrix identity() { return {}; }

  const BigInt& a() const { return m_[0]; }
  const BigInt& b() const { return m_[1]; }
  const BigInt& c() const { return m_[2]; }
  const BigInt& d() const { return m_[3]; }
  const std::array<BigInt, 4>& entries() const { return m_; }

  /// |a + d|, well defined up to sign.
  BigInt abs_trace() const;
  ProjMatrix inverse() const;
  std::string to_string() const;

  friend ProjMatrix operator*(const ProjMatrix& x, const ProjMatrix& y);
  bool operator==(const ProjMatrix& other) const { return m_ == other.m_; }
  bool operator<(const ProjMatrix& other) const { return m_ < other.m_; }

 private:
  std::array<BigInt, 4> m_;
};

/// A = [[1,1],[0,1]], B = [[1,0],[-1,1]] and their inverses.
const ProjMatrix& generator(Letter x);
ProjMatrix evaluate(const Word& w);

/// Vertex p/q of the Farey graph, reduced with q >= 0; 1/0 is infinity.
struct FareyVertex {
  BigInt p = 0;
  BigInt q = 1;

  FareyVertex() = default;
  /// Reduces and normalizes the sign; 0/0 is an input error.
  FareyVertex(BigInt num, BigInt den);
  static FareyVertex infinity() { return FareyVertex(1, 0); }

  bool is_infinity() const { return q == 0; }
  /// |p| + q.
  BigInt height() const;
  std::string to_string() const;

  bool operator==(const FareyVertex& o) const { return p == o.p && q == o.q; }
  bool operator<(const FareyVertex& o) const {
    return p < o.p || (p == o.p && q < o.q);
  }
};

/// Parses "p/q" (with "1/0" for infinity) or a plain integer.
FareyVertex parse_vertex(std::string_view text);

/// Moebius action x -> (ax + b) / (cx + d).
FareyVertex act(const ProjMatrix& m, const FareyVertex& v);

/// Throws InputError when u == v.
bool farey_adjacent(const FareyVertex& u, const FareyVertex& v);

/// Graph distance in the Farey graph. Maps u to infinity by an element of
/// SL(2, Z), expands the image of v as a regular continued fraction and runs
/// a shortest-path recursion along the convergents.
std::uint64_t farey_distance(const FareyVertex& u, const FareyVertex& v);

/// Breadth-first search restricted to vertices of height |p| + q <= bound.
/// Returns nullopt ("bound too small") when v is not reached; the result is
/// an upper bound on the true distance, exact once the bound is large enough.
std::optional<std::uint64_t> farey_distance_oracle(const FareyVertex& u, const FareyVertex& v,
                                                   std::int64_t height_bound);

/// Height-bounded search starting from 2 (h(u) + h(v)) and doubling the
/// bound while v is unreachable.
std::uint64_t farey_distance_oracle(const FareyVertex& u, const FareyVertex& v);

/// Breadth-first search inside the ladder: the vertices of the Farey
/// triangles crossed by the hyperbolic geodesic between u and v, with
/// adjacency tested directly by determinants.
std::uint64_t farey_distance_ladder(const FareyVertex& u, const FareyVertex& v);

/// Full height-bounded breadth-first search from one source, for checking
/// many targets at once.
class FareyBallSearch {
 public:
  FareyBallSearch(const FareyVertex& source, std::int64_t height_bound);

  std::optional<std::uint64_t> distance(const FareyVertex& v) const;
  std::size_t vertex_count() const { return dist_.size(); }

 private:
  std::map<std::pair<std::int64_t, std::int64_t>, std::uint64_t> dist_;
};

/// Exact isometry type on the Farey graph: loxodromic iff |trace| > 2.
IsometryKind classify_exact(const ProjMatrix& m);

/// Recognizer of the normal-form language: reduced words over {A, a, B, b}
/// avoiding ABA, aba, BAB, bab, ABa, BAb, abA, baB. States remember the
/// relevant suffix: two-letter states are named by the letters read, and a
/// single-letter state such as "X¬A B" stands for a B not preceded by A.
Automaton build_automaton();

/// Statistics on how accepted words represent group elements.
struct UniquenessReport {
  unsigned max_length = 0;
  /// Index l holds the value for words of length l (index 0 unused).
  std::vector<std::uint64_t> accepted;
  /// Distinct elements among accepted words of length exactly l.
  std::vector<std::uint64_t> distinct;
  /// Elements at word length exactly l in the Cayley graph.
  std::vector<std::uint64_t> cayley_sphere;
  /// Pairs of distinct accepted words (length <= max_length) with equal
  /// value; the first few found, shortest first.
  std::vector<std::pair<Word, Word>> collisions;
  std::uint64_t collision_count = 0;
  /// Cayley-ball elements not represented by an accepted word of length
  /// <= max_length.
  std::uint64_t unrepresented = 0;

  bool injective() const { return collision_count == 0; }
};

UniquenessReport uniqueness_report(unsigned max_length, std::size_t keep_collisions = 10);

/// PSL(2, Z) acting on the Farey graph with base point 0/1.
class FareyBackend {
 public:
  using Point = FareyVertex;
  using Element = ProjMatrix;
  using Distance = std::uint64_t;

  const Alphabet& alphabet() const { return psl2z::alphabet(); }
  Point base_point() const { return FareyVertex(0, 1); }
  Element identity() const { return ProjMatrix::identity(); }
  Element letter(Letter x) const { return generator(x); }
  Element compose(const Element& g, const Element& h) const { return g * h; }
  Element inverse(const Element& g) const { return g.inverse(); }
  Point act(const Element& g, const Point& p) const { return psl2z::act(g, p); }
  Distance dist(const Point& u, const Point& v) const { return farey_distance(u, v); }
  IsometryKind classify_exact(const Element& g) const { return psl2z::classify_exact(g); }
};

}  // namespace loxogen::psl2z
