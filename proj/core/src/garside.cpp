#include "loxogen/garside.hpp"

#include <algorithm>
#include <numeric>

#include "loxogen/counting.hpp"
#include "loxogen/error.hpp"

namespace loxogen::garside {

Permutation::Permutation(std::vector<std::uint8_t> image) : image_(std::move(image)) {
  std::vector<char> seen(image_.size(), 0);
  for (auto v : image_) {
    if (v >= image_.size() || seen[v]) throw InputError("not a permutation");
    seen[v] = 1;
  }
}

Permutation Permutation::identity(unsigned n) {
  std::vector<std::uint8_t> img(n);
  std::iota(img.begin(), img.end(), 0);
  return Permutation(std::move(img));
}

Permutation Permutation::delta(unsigned n) {
  std::vector<std::uint8_t> img(n);
  for (unsigned i = 0; i < n; ++i) img[i] = static_cast<std::uint8_t>(n - 1 - i);
  return Permutation(std::move(img));
}

Permutation Permutation::artin(unsigned n, unsigned i) {
  if (i < 1 || i >= n) throw InputError("Artin generator index out of range");
  Permutation p = identity(n);
  std::swap(p.image_[i - 1], p.image_[i]);
  return p;
}

Permutation Permutation::parse(std::string_view text) {
  std::vector<std::uint8_t> img;
  for (char ch : text) {
    if (ch < '1' || ch > '9') throw InputError("cannot parse permutation '" + std::string(text) + "'");
    img.push_back(static_cast<std::uint8_t>(ch - '1'));
  }
  return Permutation(std::move(img));
}

bool Permutation::is_identity() const {
  for (unsigned i = 0; i < size(); ++i)
    if (image_[i] != i) return false;
  return true;
}

unsigned Permutation::length() const {
  unsigned inv = 0;
  for (unsigned i = 0; i < size(); ++i)
    for (unsigned j = i + 1; j < size(); ++j) inv += image_[i] > image_[j] ? 1 : 0;
  return inv;
}

Permutation Permutation::inverse() const {
  std::vector<std::uint8_t> img(size());
  for (unsigned i = 0; i < size(); ++i) img[image_[i]] = static_cast<std::uint8_t>(i);
  return Permutation(std::move(img));
}

std::string Permutation::to_string() const {
  std::string s;
  for (auto v : image_) s += static_cast<char>('1' + v);
  return s;
}

std::uint32_t Permutation::right_descents() const {
  std::uint32_t bits = 0;
  for (unsigned i = 0; i + 1 < size(); ++i)
    if (image_[i] > image_[i + 1]) bits |= 1u << i;
  return bits;
}

std::uint32_t Permutation::left_descents() const { return inverse().right_descents(); }

Permutation operator*(const Permutation& x, const Permutation& y) {
  if (x.size() != y.size()) throw InputError("permutation braids of different index");
  std::vector<std::uint8_t> img(x.size());
  for (unsigned i = 0; i < x.size(); ++i) img[i] = x.image_[y.image_[i]];
  return Permutation(std::move(img));
}

std::uint32_t finishing_set(const Permutation& x, DescentConvention c) {
  return c == DescentConvention::RightFinishing ? x.right_descents() : x.left_descents();
}

std::uint32_t starting_set(const Permutation& y, DescentConvention c) {
  return c == DescentConvention::RightFinishing ? y.left_descents() : y.right_descents();
}

bool is_left_weighted(const Permutation& x, const Permutation& y, DescentConvention c) {
  return (starting_set(y, c) & ~finishing_set(x, c)) == 0;
}

std::vector<Permutation> normal_form(std::vector<Permutation> factors, DescentConvention c) {
  std::erase_if(factors, [](const Permutation& p) { return p.is_identity(); });
  if (factors.empty()) return factors;
  const unsigned n = factors.front().size();
  unsigned total = 0;
  for (const auto& f : factors) total += f.length();
  // Every slide moves one generator to the left; a correct convention never
  // needs more than total * |factors| of them.
  std::size_t budget = static_cast<std::size_t>(total + 1) * (factors.size() + 1) * 4;

  bool changed = true;
  while (changed && budget > 0) {
    changed = false;
    for (std::size_t k = factors.size(); k-- > 1;) {
      Permutation& x = factors[k - 1];
      Permutation& y = factors[k];
      for (;;) {
        const std::uint32_t movable = starting_set(y, c) & ~finishing_set(x, c);
        if (movable == 0 || budget == 0) break;
        unsigned i = 0;
        while (!(movable & (1u << i))) ++i;
        const Permutation s = Permutation::artin(n, i + 1);
        x = x * s;
        y = s * y;
        --budget;
        changed = true;
        if (y.is_identity()) break;
      }
    }
    std::erase_if(factors, [](const Permutation& p) { return p.is_identity(); });
  }
  return factors;
}

std::vector<Permutation> simple_elements(unsigned n) {
  if (n < 2 || n > 9) throw InputError("braid index out of range");
  std::vector<std::uint8_t> img(n);
  std::iota(img.begin(), img.end(), 0);
  std::vector<Permutation> out;
  while (std::next_permutation(img.begin(), img.end())) out.emplace_back(img);
  return out;
}

Alphabet alphabet(unsigned n) {
  std::vector<std::string> names;
  for (const auto& p : simple_elements(n)) names.push_back(p.to_string());
  return Alphabet(std::move(names));
}

Automaton build_automaton(unsigned n, DescentConvention c) {
  if (n < 3 || n > 5) throw InputError("braid automaton supports 3 <= n <= 5");
  const auto simples = simple_elements(n);
  const std::size_t k = simples.size();
  AutomatonBuilder b(alphabet(n), k + 2, 0, 1);
  b.name(0, "start").name(1, "fail");
  for (std::size_t g = 0; g < k; ++g) {
    const State sg = static_cast<State>(g + 2);
    b.name(sg, simples[g].to_string()).accept(sg);
    b.transition(0, static_cast<Letter>(g), sg);
    for (std::size_t x = 0; x < k; ++x)
      if (is_left_weighted(simples[x], simples[g], c))
        b.transition(static_cast<State>(x + 2), static_cast<Letter>(g), sg);
  }
  return b.build();
}

Word to_word(unsigned n, const std::vector<Permutation>& factors) {
  const Alphabet alpha = alphabet(n);
  Word w;
  for (const auto& f : factors) {
    if (f.size() != n) throw InputError("factor of wrong braid index");
    w.push_back(alpha.letter(f.to_string()));
  }
  return w;
}

std::vector<Permutation> to_factors(unsigned n, const Word& w) {
  const auto simples = simple_elements(n);
  std::vector<Permutation> out;
  for (Letter x : w) {
    if (x >= simples.size()) throw InputError("letter outside the braid alphabet");
    out.push_back(simples[x]);
  }
  return out;
}

Census rigid_census(unsigned n, unsigned l) {
  const Automaton aut = build_automaton(n);
  return Census{count_sphere(aut, l), rigid_sphere_count(aut, l)};
}

BallBound ball_bound_report(unsigned n, unsigned l) {
  const Census c = rigid_census(n, l);
  if (c.total == 0) throw InputError("empty sphere");
  const BigRational rho(c.rigid, c.total);
  return BallBound{rho, rho / 2};
}

}  // namespace loxogen::garside
