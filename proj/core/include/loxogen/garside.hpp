#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "loxogen/automaton.hpp"
#include "loxogen/bigint.hpp"

namespace loxogen::garside {

/// Permutation braid of B_n^+, stored as a permutation of {0..n-1} in
/// one-line notation. The Artin generator sigma_i (1 <= i < n) is the
/// transposition s_i, and the braid product x y is the permutation x o y.
class Permutation {
 public:
  Permutation() = default;
  explicit Permutation(std::vector<std::uint8_t> image);

  static Permutation identity(unsigned n);
  /// The half twist: the order-reversing permutation.
  static Permutation delta(unsigned n);
  /// sigma_i, 1 <= i < n.
  static Permutation artin(unsigned n, unsigned i);
  /// One-line notation with 1-based digits, e.g. "213".
  static Permutation parse(std::string_view text);

  unsigned size() const { return static_cast<unsigned>(image_.size()); }
  unsigned operator[](unsigned i) const { return image_[i]; }
  bool is_identity() const;
  /// Number of inversions, the braid length.
  unsigned length() const;
  Permutation inverse() const;
  std::string to_string() const;

  /// Bit i-1 set for each i in {1..n-1} with pi(i) > pi(i+1).
  std::uint32_t right_descents() const;
  /// Bit i-1 set for each i with pi^-1(i) > pi^-1(i+1).
  std::uint32_t left_descents() const;

  friend Permutation operator*(const Permutation& x, const Permutation& y);
  bool operator==(const Permutation& o) const { return image_ == o.image_; }
  bool operator<(const Permutation& o) const { return image_ < o.image_; }

 private:
  std::vector<std::uint8_t> image_;
};

/// Which descent set plays the finishing set F(x) and which the starting
/// set S(y). Finishing sets are the generators a simple element can end
/// with and starting sets the ones it can begin with, which is
/// RightFinishing; Swapped exchanges the two and exists to show that the
/// uniqueness checks reject it.
enum class DescentConvention { RightFinishing, Swapped };

std::uint32_t finishing_set(const Permutation& x,
                            DescentConvention c = DescentConvention::RightFinishing);
std::uint32_t starting_set(const Permutation& y,
                           DescentConvention c = DescentConvention::RightFinishing);

/// S(y) is contained in F(x).
bool is_left_weighted(const Permutation& x, const Permutation& y,
                      DescentConvention c = DescentConvention::RightFinishing);

/// Left-weighted factorization of the product of `factors`, obtained by
/// sliding generators from the right factor into the left one until every
/// adjacent pair is left-weighted. Identity factors are dropped.
std::vector<Permutation> normal_form(std::vector<Permutation> factors,
                                     DescentConvention c = DescentConvention::RightFinishing);

/// Nontrivial permutation braids of B_n^+ in lexicographic order.
std::vector<Permutation> simple_elements(unsigned n);

/// Letter names are the one-line notations of the simple elements.
Alphabet alphabet(unsigned n);

/// One state per nontrivial permutation braid plus start (0) and fail (1);
/// state 2 + i is reached by letter i. From x, letter g leads to the state
/// of g when (x, g) is left-weighted and to fail otherwise. 3 <= n <= 5.
Automaton build_automaton(unsigned n,
                          DescentConvention c = DescentConvention::RightFinishing);

Word to_word(unsigned n, const std::vector<Permutation>& factors);
std::vector<Permutation> to_factors(unsigned n, const Word& w);

struct Census {
  BigInt total;
  BigInt rigid;
};

/// Normal forms of length exactly l and how many of them are rigid.
Census rigid_census(unsigned n, unsigned l);

struct BallBound {
  BigRational sphere_proportion;
  /// Half the sphere proportion.
  BigRational ball_bound;
};

BallBound ball_bound_report(unsigned n, unsigned l);

}  // namespace loxogen::garside
