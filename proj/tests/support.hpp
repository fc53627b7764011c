#pragma once

#include <cstddef>
#include <functional>
#include <vector>

#include "loxogen/automaton.hpp"

namespace loxogen::testing {

/// Every word of length l over an alphabet of `letters` letters, in
/// lexicographic order.
inline void for_each_word(std::size_t letters, unsigned l,
                          const std::function<void(const Word&)>& visit) {
  Word w(l, 0);
  for (;;) {
    visit(w);
    unsigned i = l;
    while (i > 0) {
      --i;
      if (++w[i] < letters) break;
      w[i] = 0;
      if (i == 0) return;
    }
    if (l == 0) return;
  }
}

/// Accepted words of length l found by testing every word.
inline std::vector<Word> brute_force_sphere(const Automaton& aut, unsigned l) {
  std::vector<Word> out;
  for_each_word(aut.letter_count(), l, [&](const Word& w) {
    if (accepts(aut, w)) out.push_back(w);
  });
  return out;
}

inline Word repeat(const Word& w, unsigned n) {
  Word out;
  for (unsigned i = 0; i < n; ++i) out.insert(out.end(), w.begin(), w.end());
  return out;
}

/// w^n accepted for n = 1..bound, by direct acceptance tests.
inline bool powers_accepted(const Automaton& aut, const Word& w, unsigned bound) {
  for (unsigned n = 1; n <= bound; ++n)
    if (!accepts(aut, repeat(w, n))) return false;
  return true;
}

}  // namespace loxogen::testing
