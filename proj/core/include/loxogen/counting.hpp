#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include "loxogen/automaton.hpp"
#include "loxogen/bigint.hpp"

namespace loxogen {

/// Transition counts of an automaton restricted to a set of states:
/// entry (i, j) is the number of letters leading from states()[i] to
/// states()[j].
class CountMatrix {
 public:
  CountMatrix() = default;
  CountMatrix(StateSet states, std::vector<BigInt> entries);

  std::size_t dimension() const { return states_.size(); }
  const BigInt& operator()(std::size_t i, std::size_t j) const {
    return entries_[i * dimension() + j];
  }
  const StateSet& states() const { return states_; }
  std::optional<std::size_t> index_of(State s) const;

  /// Entrywise power; the 0th power is the identity.
  CountMatrix power(unsigned exponent) const;
  bool is_positive() const;

 private:
  StateSet states_;
  std::vector<BigInt> entries_;
};

CountMatrix transition_matrix(const Automaton& aut, const StateSet& states);

struct GrowthEstimate {
  double rate = 0.0;
  double residual = 0.0;
  std::size_t iterations = 0;
};

struct PowerIterationOptions {
  double tolerance = 1e-12;
  std::size_t max_iterations = 100000;
};

/// Spectral radius of a nonnegative matrix. Each strongly connected block is
/// handled by power iteration on (block + I) from the all-ones vector, and
/// the largest block radius wins; a matrix without cycles has rate 0. A block
/// that fails to converge keeps its residual above tolerance.
GrowthEstimate growth_rate(const CountMatrix& m,
                           const PowerIterationOptions& options = {});

/// Growth rate of the accepted language: the count matrix restricted to the
/// interior states lying on some start-to-accept path.
GrowthEstimate language_growth_rate(const Automaton& aut,
                                    const PowerIterationOptions& options = {});

/// table[k][s] = number of words of length k leading from s to an accept
/// state, for k = 0..max_length.
std::vector<std::vector<BigInt>> completion_counts(const Automaton& aut,
                                                   unsigned max_length);

/// Accepted words of length exactly l.
BigInt count_sphere(const Automaton& aut, unsigned l);

/// 1 (the empty normal form) plus the sphere counts for lengths 1..l.
BigInt count_ball(const Automaton& aut, unsigned l);

/// Fraction of accepted words of length l that start with `prefix`.
/// Throws when no word of length l is accepted or l < |prefix|.
BigRational prefix_proportion(const Automaton& aut, const Word& prefix,
                              unsigned l);

/// Among accepted words of length l starting with `prefix`, the fraction
/// whose run ends in `target`.
BigRational end_state_proportion(const Automaton& aut, const Word& prefix,
                                 State target, unsigned l);

/// Accepted words of length l that are rigid.
BigInt rigid_sphere_count(const Automaton& aut, unsigned l);

/// Growth rate of the accepted words avoiding `pattern` as a factor.
GrowthEstimate avoidance_growth_rate(const Automaton& aut, const Word& pattern,
                                     const PowerIterationOptions& options = {});

/// Accepted words of length l avoiding `pattern` as a factor.
BigInt count_avoiding(const Automaton& aut, const Word& pattern, unsigned l);

/// Called once per accepted word with the word and whether it is rigid.
using RigidityVisitor = std::function<void(const Word&, bool rigid)>;

/// Depth-first walk over the accepted words of length l in lexicographic
/// letter order. When `first` is set only words starting with that letter
/// are visited, which lets callers shard the sphere.
void enumerate_sphere(const Automaton& aut, unsigned l,
                      const std::function<void(const Word&)>& visit,
                      std::optional<Letter> first = std::nullopt);

/// Same walk, also deciding rigidity of every word incrementally (the state
/// map "read w" is carried down the recursion).
void enumerate_sphere_rigidity(const Automaton& aut, unsigned l,
                               const RigidityVisitor& visit,
                               std::optional<Letter> first = std::nullopt);

std::vector<Word> sphere_words(const Automaton& aut, unsigned l);

/// Exactly uniform sampler over the accepted words of length l.
class UniformSampler {
 public:
  UniformSampler(const Automaton& aut, unsigned length);

  const BigInt& population() const { return table_[length_][start_]; }
  Word sample(std::mt19937_64& rng) const;

 private:
  Automaton aut_;
  unsigned length_;
  State start_;
  std::vector<std::vector<BigInt>> table_;
};

/// One uniform sample from a generator seeded with `seed`.
Word sample_uniform(const Automaton& aut, unsigned l, std::uint64_t seed);

}  // namespace loxogen
