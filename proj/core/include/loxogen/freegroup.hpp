#pragma once

#include <cstdint>
#include <utility>

#include "loxogen/automaton.hpp"
#include "loxogen/geometry.hpp"

namespace loxogen::freegroup {

/// Letters of F_k: 2i is the i-th generator, 2i + 1 its inverse. Generators
/// are named a, b, c, ... and inverses a', b', c', ...
Alphabet alphabet(unsigned k);

inline Letter inverse(Letter x) { return static_cast<Letter>(x ^ 1u); }

Word inverse(const Word& w);

/// Free reduction.
Word reduce(const Word& w);

struct CyclicReduction {
  Word conjugator;
  Word core;
};

/// w = conjugator . core . conjugator^-1 with core cyclically reduced.
/// The input is reduced first.
CyclicReduction cyclically_reduce(const Word& w);

bool is_cyclically_reduced(const Word& w);

/// Reduced words: 2k letter states plus start (0) and fail (1); letter x
/// leads to state 2 + x unless it cancels the previous letter. k >= 2.
Automaton build_automaton(unsigned k);

/// Appends at most one letter so that the result is cyclically reduced: a
/// letter different from the inverses of the first and last letters.
/// Throws on the empty word.
Word loxodromize(const Word& w);

/// F_k acting on its Cayley tree by left multiplication, base point the
/// identity vertex. Elements and points are words; compose and dist reduce
/// their inputs, so unreduced words are valid elements.
class TreeBackend {
 public:
  using Point = Word;
  using Element = Word;
  using Distance = std::uint64_t;

  explicit TreeBackend(unsigned k);

  const Alphabet& alphabet() const { return alphabet_; }
  Point base_point() const { return {}; }
  Element identity() const { return {}; }
  Element letter(Letter x) const { return Word{x}; }
  Element compose(const Element& g, const Element& h) const;
  Element inverse(const Element& g) const { return freegroup::inverse(g); }
  Point act(const Element& g, const Point& p) const { return compose(g, p); }
  Distance dist(const Point& u, const Point& v) const;
  /// Loxodromic iff the cyclic core is nonempty.
  IsometryKind classify_exact(const Element& g) const;
  /// Exact translation length: the length of the cyclic core.
  std::uint64_t translation_length(const Element& g) const;

 private:
  Alphabet alphabet_;
};

}  // namespace loxogen::freegroup
