#include <gtest/gtest.h>

#include <algorithm>
#include <map>
#include <random>
#include <set>

#include "loxogen/counting.hpp"
#include "loxogen/error.hpp"
#include "loxogen/garside.hpp"
#include "braid_oracle.hpp"
#include "support.hpp"

namespace loxogen::garside {
namespace {

using loxogen::testing::for_each_word;
using loxogen::testing::repeat;
using loxogen::testing::ArtinWord;
using loxogen::testing::BraidClasses;
using loxogen::testing::expand;
using loxogen::testing::reduced_word;

/// Checks that accepted words of braid length L <= max_length are in
/// bijection with positive braids of length L.
bool normal_forms_are_unique(unsigned n, unsigned max_length, DescentConvention c) {
  const Automaton aut = build_automaton(n, c);
  BraidClasses classes;
  std::map<unsigned, std::set<ArtinWord>> from_forms;
  std::map<unsigned, std::size_t> form_count;
  for (unsigned l = 1; l <= max_length; ++l)
    enumerate_sphere(aut, l, [&](const Word& w) {
      const ArtinWord e = expand(to_factors(n, w));
      if (e.size() > max_length) return;
      ++form_count[static_cast<unsigned>(e.size())];
      from_forms[static_cast<unsigned>(e.size())].insert(classes.canonical(e));
    });
  for (unsigned len = 1; len <= max_length; ++len) {
    std::set<ArtinWord> all;
    for_each_word(n - 1, len, [&](const Word& w) {
      all.insert(classes.canonical(ArtinWord(w.begin(), w.end())));
    });
    if (form_count[len] != all.size() || from_forms[len] != all) return false;
  }
  return true;
}

TEST(Permutation, Basics) {
  const Permutation s1 = Permutation::artin(3, 1), s2 = Permutation::artin(3, 2);
  EXPECT_EQ(s1.to_string(), "213");
  EXPECT_EQ(s2.to_string(), "132");
  EXPECT_EQ(Permutation::delta(3).to_string(), "321");
  EXPECT_EQ(Permutation::delta(4).length(), 6u);
  EXPECT_EQ(s1 * s2, Permutation::parse("231"));
  EXPECT_EQ(s1 * s2 * s1, Permutation::delta(3));
  EXPECT_EQ(s2 * s1 * s2, Permutation::delta(3));
  EXPECT_EQ(Permutation::parse("231").inverse(), Permutation::parse("312"));
  EXPECT_TRUE(Permutation::identity(4).is_identity());
  EXPECT_THROW(Permutation::parse("113"), InputError);
  EXPECT_THROW(Permutation::parse("1a3"), InputError);
  EXPECT_THROW(Permutation::artin(3, 3), InputError);
  EXPECT_THROW(s1 * Permutation::identity(4), InputError);
}

TEST(Permutation, DescentsMatchReducedWords) {
  for (unsigned n = 3; n <= 5; ++n)
    for (const auto& p : simple_elements(n)) {
      const ArtinWord r = reduced_word(p);
      EXPECT_EQ(r.size(), p.length());
      Permutation q = Permutation::identity(n);
      for (unsigned i : r) q = q * Permutation::artin(n, i + 1);
      EXPECT_EQ(q, p);
      // p can end with s_i iff i is a right descent, start with it iff left.
      for (unsigned i = 0; i + 1 < n; ++i) {
        const Permutation s = Permutation::artin(n, i + 1);
        EXPECT_EQ(bool(p.right_descents() & (1u << i)), (p * s).length() < p.length());
        EXPECT_EQ(bool(p.left_descents() & (1u << i)), (s * p).length() < p.length());
      }
    }
}

TEST(Simples, CountsAndOrder) {
  EXPECT_EQ(simple_elements(3).size(), 5u);
  EXPECT_EQ(simple_elements(4).size(), 23u);
  EXPECT_EQ(simple_elements(5).size(), 119u);
  const auto s = simple_elements(4);
  EXPECT_TRUE(std::is_sorted(s.begin(), s.end()));
  EXPECT_EQ(alphabet(3).names(),
            (std::vector<std::string>{"132", "213", "231", "312", "321"}));
}

TEST(LeftWeighted, Examples) {
  const Permutation s1 = Permutation::artin(3, 1), s2 = Permutation::artin(3, 2);
  EXPECT_TRUE(is_left_weighted(s1, s1));
  EXPECT_FALSE(is_left_weighted(s1, s2));
  EXPECT_TRUE(is_left_weighted(Permutation::delta(3), s2));
  EXPECT_FALSE(is_left_weighted(s1, Permutation::delta(3)));
}

TEST(NormalForm, SlidesGenerators) {
  const Permutation s1 = Permutation::artin(3, 1), s2 = Permutation::artin(3, 2);
  EXPECT_EQ(normal_form({s1, s2}), std::vector<Permutation>{Permutation::parse("231")});
  EXPECT_EQ(normal_form({s1, s1}), (std::vector<Permutation>{s1, s1}));
  EXPECT_EQ(normal_form({s1, s2, s1}), std::vector<Permutation>{Permutation::delta(3)});
  EXPECT_TRUE(normal_form({Permutation::identity(3)}).empty());
}

TEST(NormalForm, ProducesAcceptedWordsOfTheSameBraid) {
  std::mt19937_64 rng(8);
  BraidClasses classes;
  for (unsigned n = 3; n <= 5; ++n) {
    const auto simples = simple_elements(n);
    const Automaton aut = build_automaton(n);
    for (int t = 0; t < 150; ++t) {
      std::vector<Permutation> f(1 + rng() % 3);
      for (auto& p : f) p = simples[rng() % simples.size()];
      const auto nf = normal_form(f);
      EXPECT_TRUE(accepts(aut, to_word(n, nf)));
      const ArtinWord before = expand(f), after = expand(nf);
      EXPECT_EQ(before.size(), after.size());
      if (before.size() <= 8) {
        EXPECT_EQ(classes.canonical(before), classes.canonical(after));
      }
      EXPECT_EQ(normal_form(nf), nf);
    }
  }
}

TEST(Automaton, Shape) {
  const Automaton b3 = build_automaton(3);
  EXPECT_EQ(b3.state_count(), 7u);
  EXPECT_EQ(build_automaton(4).state_count(), 25u);
  EXPECT_EQ(build_automaton(5).state_count(), 121u);
  EXPECT_THROW(build_automaton(6), InputError);
  EXPECT_EQ(b3.state_name(2), "132");
  EXPECT_EQ(to_word(3, {Permutation::delta(3)}), Word{4});
  EXPECT_EQ(to_factors(3, Word{0, 4})[1], Permutation::delta(3));
}

TEST(Uniqueness, RightFinishingConventionIsUnique) {
  EXPECT_TRUE(normal_forms_are_unique(3, 6, DescentConvention::RightFinishing));
  EXPECT_TRUE(normal_forms_are_unique(4, 5, DescentConvention::RightFinishing));
}

TEST(Uniqueness, SwappedConventionIsRejected) {
  EXPECT_FALSE(normal_forms_are_unique(3, 6, DescentConvention::Swapped));
  EXPECT_FALSE(normal_forms_are_unique(4, 5, DescentConvention::Swapped));
}

TEST(Rigidity, MatchesNormalFormOfTheSquare) {
  for (unsigned n = 3; n <= 4; ++n) {
    const Automaton aut = build_automaton(n);
    for (unsigned l = 1; l <= (n == 3 ? 6u : 3u); ++l)
      enumerate_sphere_rigidity(aut, l, [&](const Word& w, bool rigid) {
        const auto f = to_factors(n, repeat(w, 2));
        EXPECT_EQ(rigid, normal_form(f) == f) << format_word(aut.alphabet(), w);
      });
  }
}

TEST(Census, B3Counts) {
  const std::vector<int> total{5, 13, 29, 61, 125, 253, 509, 1021, 2045, 4093};
  const std::vector<int> rigid{3, 5, 9, 17, 33, 65, 129, 257, 513, 1025};
  for (unsigned l = 1; l <= 10; ++l) {
    const Census c = rigid_census(3, l);
    EXPECT_EQ(c.total, total[l - 1]);
    EXPECT_EQ(c.rigid, rigid[l - 1]);
    // Closed forms: 2^(l+2) - 3 normal forms, 2^l + 1 rigid ones.
    EXPECT_EQ(c.total, (BigInt(1) << (l + 2)) - 3);
    EXPECT_EQ(c.rigid, (BigInt(1) << l) + 1);
  }
  const BallBound b = ball_bound_report(3, 10);
  EXPECT_EQ(b.sphere_proportion, BigRational(1025, 4093));
  EXPECT_EQ(b.ball_bound, BigRational(1025, 8186));
}

TEST(Structure, DeltaIsNotAccessible) {
  for (unsigned n = 3; n <= 5; ++n) {
    const Automaton aut = build_automaton(n);
    const StructureReport r = check_anf_hypothesis(aut);
    EXPECT_TRUE(r.anf_hypothesis());
    const State delta = *aut.find_state(Permutation::delta(n).to_string());
    EXPECT_FALSE(std::binary_search(r.accessible.begin(), r.accessible.end(), delta));
    EXPECT_NEAR(r.complement_rate, 1.0, 1e-12);
  }
}

}  // namespace
}  // namespace loxogen::garside
