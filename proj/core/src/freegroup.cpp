#include "loxogen/freegroup.hpp"

#include <algorithm>
#include <string>

#include "loxogen/error.hpp"

namespace loxogen::freegroup {

Alphabet alphabet(unsigned k) {
  if (k < 1 || k > 26) throw InputError("free group rank must be between 1 and 26");
  std::vector<std::string> names;
  for (unsigned i = 0; i < k; ++i) {
    const std::string g(1, static_cast<char>('a' + i));
    names.push_back(g);
    names.push_back(g + "'");
  }
  return Alphabet(std::move(names));
}

Word inverse(const Word& w) {
  Word out(w.rbegin(), w.rend());
  for (Letter& x : out) x = inverse(x);
  return out;
}

Word reduce(const Word& w) {
  Word out;
  out.reserve(w.size());
  for (Letter x : w) {
    if (!out.empty() && out.back() == freegroup::inverse(x))
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

CyclicReduction cyclically_reduce(const Word& w) {
  const Word r = reduce(w);
  std::size_t i = 0, j = r.size();
  while (j - i >= 2 && r[i] == inverse(r[j - 1])) {
    ++i;
    --j;
  }
  return CyclicReduction{Word(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(i)),
                         Word(r.begin() + static_cast<std::ptrdiff_t>(i),
                              r.begin() + static_cast<std::ptrdiff_t>(j))};
}

bool is_cyclically_reduced(const Word& w) {
  if (reduce(w).size() != w.size()) return false;
  return w.size() < 2 || w.front() != inverse(w.back());
}

Automaton build_automaton(unsigned k) {
  if (k < 2) throw InputError("free group automaton needs rank >= 2");
  const Alphabet alpha = alphabet(k);
  const std::size_t n = alpha.size();
  AutomatonBuilder b(alpha, n + 2, 0, 1);
  b.name(0, "start").name(1, "fail");
  for (std::size_t x = 0; x < n; ++x) {
    const State sx = static_cast<State>(x + 2);
    b.name(sx, alpha.name(static_cast<Letter>(x))).accept(sx);
    b.transition(0, static_cast<Letter>(x), sx);
    for (std::size_t y = 0; y < n; ++y)
      if (y != inverse(static_cast<Letter>(x)))
        b.transition(sx, static_cast<Letter>(y), static_cast<State>(y + 2));
  }
  return b.build();
}

Word loxodromize(const Word& w_in) {
  const Word w = reduce(w_in);
  if (w.empty()) throw InputError("loxodromize needs a nontrivial element");
  if (is_cyclically_reduced(w)) return w;
  // Smallest letter avoiding both inverses; one exists since there are at
  // least four letters.
  const Letter bad1 = inverse(w.front()), bad2 = inverse(w.back());
  Letter x = 0;
  while (x == bad1 || x == bad2) ++x;
  Word out = w;
  out.push_back(x);
  return out;
}

TreeBackend::TreeBackend(unsigned k) : alphabet_(freegroup::alphabet(k)) {
  if (k < 2) throw InputError("tree backend needs rank >= 2");
}

Word TreeBackend::compose(const Word& g, const Word& h) const {
  // Stack reduction over g then h, so unreduced inputs are fine.
  Word out;
  out.reserve(g.size() + h.size());
  for (Letter x : g) {
    if (x >= alphabet_.size()) throw InputError("letter outside the free group alphabet");
    if (!out.empty() && out.back() == freegroup::inverse(x))
      out.pop_back();
    else
      out.push_back(x);
  }
  for (Letter x : h) {
    if (x >= alphabet_.size()) throw InputError("letter outside the free group alphabet");
    if (!out.empty() && out.back() == freegroup::inverse(x))
      out.pop_back();
    else
      out.push_back(x);
  }
  return out;
}

std::uint64_t TreeBackend::dist(const Word& u_in, const Word& v_in) const {
  const Word u = reduce(u_in), v = reduce(v_in);
  std::size_t common = 0;
  while (common < u.size() && common < v.size() && u[common] == v[common]) ++common;
  return (u.size() - common) + (v.size() - common);
}

IsometryKind TreeBackend::classify_exact(const Word& g) const {
  return translation_length(g) > 0 ? IsometryKind::Loxodromic : IsometryKind::Elliptic;
}

std::uint64_t TreeBackend::translation_length(const Word& g) const {
  return cyclically_reduce(g).core.size();
}

}  // namespace loxogen::freegroup
