#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include "loxogen/counting.hpp"
#include "loxogen/error.hpp"
#include "loxogen/freegroup.hpp"
#include "support.hpp"

namespace loxogen::freegroup {
namespace {

using loxogen::testing::for_each_word;

Word random_word(std::mt19937_64& rng, unsigned k, unsigned len) {
  Word w(len);
  for (auto& x : w) x = static_cast<Letter>(rng() % (2 * k));
  return w;
}

/// Free reduction by repeated cancellation, as a slow oracle.
Word slow_reduce(Word w) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
      if (w[i] == inverse(w[i + 1])) {
        w.erase(w.begin() + static_cast<std::ptrdiff_t>(i), w.begin() + static_cast<std::ptrdiff_t>(i) + 2);
        changed = true;
        break;
      }
  }
  return w;
}

TEST(Alphabet, Names) {
  EXPECT_EQ(alphabet(2).names(), (std::vector<std::string>{"a", "a'", "b", "b'"}));
  EXPECT_EQ(inverse(Letter{2}), 3);
  EXPECT_EQ(inverse(Word{0, 3}), (Word{2, 1}));
}

TEST(Reduction, MatchesSlowOracle) {
  std::mt19937_64 rng(4);
  for (int i = 0; i < 2000; ++i) {
    const Word w = random_word(rng, 2, rng() % 14);
    const Word r = reduce(w);
    EXPECT_EQ(r, slow_reduce(w));
    EXPECT_EQ(reduce(r), r);
  }
}

TEST(Reduction, CyclicReductionConjugates) {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 2000; ++i) {
    const Word w = random_word(rng, 3, rng() % 12);
    const CyclicReduction c = cyclically_reduce(w);
    EXPECT_TRUE(is_cyclically_reduced(c.core));
    Word rebuilt = c.conjugator;
    rebuilt.insert(rebuilt.end(), c.core.begin(), c.core.end());
    const Word back = inverse(c.conjugator);
    rebuilt.insert(rebuilt.end(), back.begin(), back.end());
    EXPECT_EQ(reduce(rebuilt), reduce(w));
  }
  EXPECT_TRUE(is_cyclically_reduced(Word{}));
  EXPECT_FALSE(is_cyclically_reduced(Word{0, 2, 1}));
}

TEST(Automaton, AcceptsReducedWords) {
  const Automaton aut = build_automaton(2);
  for (unsigned l = 1; l <= 6; ++l)
    for_each_word(4, l, [&](const Word& w) { EXPECT_EQ(accepts(aut, w), reduce(w) == w); });
  EXPECT_THROW(build_automaton(1), InputError);
}

TEST(Automaton, SphereCounts) {
  for (unsigned k = 2; k <= 3; ++k) {
    const Automaton aut = build_automaton(k);
    BigInt expected = 2 * k;
    for (unsigned l = 1; l <= 30; ++l, expected *= 2 * k - 1)
      EXPECT_EQ(count_sphere(aut, l), expected);
  }
}

TEST(Rigidity, RigidIffCyclicallyReduced) {
  const Automaton aut = build_automaton(2);
  for (unsigned l = 1; l <= 8; ++l) {
    BigInt rigid = 0;
    enumerate_sphere_rigidity(aut, l, [&](const Word& w, bool r) {
      EXPECT_EQ(r, is_cyclically_reduced(w));
      if (r) ++rigid;
    });
    // Cyclically reduced words of length l in F_2: 3^l + 1 + (1 + (-1)^l).
    const BigInt expected = boost::multiprecision::pow(BigInt(3), l) + 1 + (l % 2 == 0 ? 2 : 0);
    EXPECT_EQ(rigid, expected) << l;
  }
}

TEST(Loxodromize, AppendsAtMostOneLetter) {
  std::mt19937_64 rng(6);
  const TreeBackend t(2);
  for (int i = 0; i < 2000; ++i) {
    const Word w = reduce(random_word(rng, 2, 1 + rng() % 10));
    if (w.empty()) {
      EXPECT_THROW(loxodromize(w), InputError);
      continue;
    }
    const Word out = loxodromize(w);
    EXPECT_TRUE(is_cyclically_reduced(out));
    EXPECT_LE(out.size(), w.size() + 1);
    EXPECT_TRUE(std::equal(w.begin(), w.end(), out.begin()));
    EXPECT_EQ(t.classify_exact(out), IsometryKind::Loxodromic);
  }
  EXPECT_EQ(loxodromize(Word{0, 2, 1}), (Word{0, 2, 1, 2}));
}

TEST(Tree, DistanceAndAction) {
  const TreeBackend t(2);
  EXPECT_EQ(t.dist(Word{0, 2}, Word{0, 3}), 2u);
  EXPECT_EQ(t.dist(Word{}, Word{0, 2, 0}), 3u);
  EXPECT_EQ(t.compose(Word{0, 2}, Word{3, 1}), Word{});
  std::mt19937_64 rng(9);
  for (int i = 0; i < 500; ++i) {
    const Word g = reduce(random_word(rng, 2, rng() % 8));
    const Word u = reduce(random_word(rng, 2, rng() % 8));
    const Word v = reduce(random_word(rng, 2, rng() % 8));
    EXPECT_EQ(t.dist(t.act(g, u), t.act(g, v)), t.dist(u, v));
    // Tree distance is the length of u^-1 v.
    EXPECT_EQ(t.dist(u, v), reduce(t.compose(inverse(u), v)).size());
  }
}

TEST(Tree, TranslationLength) {
  const TreeBackend t(2);
  std::mt19937_64 rng(10);
  for (int i = 0; i < 500; ++i) {
    const Word g = reduce(random_word(rng, 2, 1 + rng() % 8));
    const std::uint64_t tau = t.translation_length(g);
    EXPECT_EQ(tau, cyclically_reduce(g).core.size());
    // d(P, g^n P) = n tau + 2 |conjugator| for n >= 1.
    const std::uint64_t c = cyclically_reduce(g).conjugator.size();
    if (tau > 0) {
      EXPECT_EQ(displacement(t, power(t, g, 5)), 5 * tau + 2 * c);
    }
  }
}

}  // namespace
}  // namespace loxogen::freegroup
