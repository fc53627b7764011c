#include "loxogen/counting.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <limits>
#include <utility>

#include "loxogen/error.hpp"

namespace loxogen {

// ---------------------------------------------------------------------------
// CountMatrix

CountMatrix::CountMatrix(StateSet states, std::vector<BigInt> entries)
    : states_(std::move(states)), entries_(std::move(entries)) {
  if (entries_.size() != states_.size() * states_.size())
    throw InputError("CountMatrix: entry count does not match dimension");
}

std::optional<std::size_t> CountMatrix::index_of(State s) const {
  auto it = std::lower_bound(states_.begin(), states_.end(), s);
  if (it == states_.end() || *it != s) return std::nullopt;
  return static_cast<std::size_t>(it - states_.begin());
}

CountMatrix CountMatrix::power(unsigned exponent) const {
  const std::size_t n = dimension();
  std::vector<BigInt> result(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) result[i * n + i] = 1;
  std::vector<BigInt> base = entries_;
  auto multiply = [n](const std::vector<BigInt>& a, const std::vector<BigInt>& b) {
    std::vector<BigInt> c(n * n, 0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t m = 0; m < n; ++m) {
        if (a[i * n + m] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) c[i * n + j] += a[i * n + m] * b[m * n + j];
      }
    return c;
  };
  while (exponent > 0) {
    if (exponent & 1u) result = multiply(result, base);
    exponent >>= 1;
    if (exponent > 0) base = multiply(base, base);
  }
  return CountMatrix(states_, std::move(result));
}

bool CountMatrix::is_positive() const {
  return std::all_of(entries_.begin(), entries_.end(),
                     [](const BigInt& v) { return v > 0; });
}

CountMatrix transition_matrix(const Automaton& aut, const StateSet& states_in) {
  StateSet states = states_in;
  std::sort(states.begin(), states.end());
  states.erase(std::unique(states.begin(), states.end()), states.end());
  for (State s : states) {
    if (s >= aut.state_count()) throw InputError("transition_matrix: state out of range");
    if (s == aut.start() || s == aut.fail())
      throw InputError("transition_matrix: start and fail are excluded");
  }
  const std::size_t n = states.size();
  std::vector<BigInt> entries(n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t x = 0; x < aut.letter_count(); ++x) {
      const State t = aut.next(states[i], static_cast<Letter>(x));
      auto it = std::lower_bound(states.begin(), states.end(), t);
      if (it != states.end() && *it == t)
        entries[i * n + static_cast<std::size_t>(it - states.begin())] += 1;
    }
  }
  return CountMatrix(std::move(states), std::move(entries));
}

// ---------------------------------------------------------------------------
// Growth rates

namespace {

// Strongly connected components of the nonzero pattern (Kosaraju).
std::vector<std::vector<std::size_t>> strong_components(
    const std::vector<std::vector<std::size_t>>& succ) {
  const std::size_t n = succ.size();
  std::vector<std::vector<std::size_t>> pred(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j : succ[i]) pred[j].push_back(i);

  std::vector<char> seen(n, 0);
  std::vector<std::size_t> order;
  for (std::size_t root = 0; root < n; ++root) {
    if (seen[root]) continue;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root, 0}};
    seen[root] = 1;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      if (next < succ[v].size()) {
        const std::size_t w = succ[v][next++];
        if (!seen[w]) {
          seen[w] = 1;
          stack.emplace_back(w, 0);
        }
      } else {
        order.push_back(v);
        stack.pop_back();
      }
    }
  }

  std::vector<long> comp(n, -1);
  std::vector<std::vector<std::size_t>> out;
  for (auto it = order.rbegin(); it != order.rend(); ++it) {
    if (comp[*it] >= 0) continue;
    std::vector<std::size_t> members;
    std::vector<std::size_t> stack{*it};
    comp[*it] = static_cast<long>(out.size());
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      members.push_back(v);
      for (std::size_t w : pred[v])
        if (comp[w] < 0) {
          comp[w] = static_cast<long>(out.size());
          stack.push_back(w);
        }
    }
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  return out;
}

GrowthEstimate power_iteration(const std::vector<double>& block, std::size_t n,
                               const PowerIterationOptions& options) {
  // Iterate with B + I: same Perron vector, and the shift makes an
  // irreducible block primitive.
  std::vector<double> v(n, 1.0);
  std::vector<double> y(n, 0.0);
  GrowthEstimate est;
  est.residual = std::numeric_limits<double>::infinity();
  double mu = 0.0;
  for (std::size_t it = 1; it <= options.max_iterations; ++it) {
    for (std::size_t i = 0; i < n; ++i) {
      double acc = v[i];
      for (std::size_t j = 0; j < n; ++j) acc += block[i * n + j] * v[j];
      y[i] = acc;
    }
    mu = *std::max_element(y.begin(), y.end());
    double change = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      y[i] /= mu;
      change = std::max(change, std::abs(y[i] - v[i]));
    }
    std::swap(v, y);
    est.iterations = it;
    est.residual = change;
    if (change < options.tolerance) break;
  }
  est.rate = mu - 1.0;
  return est;
}

}  // namespace

GrowthEstimate growth_rate(const CountMatrix& m, const PowerIterationOptions& options) {
  const std::size_t n = m.dimension();
  std::vector<std::vector<std::size_t>> succ(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (m(i, j) != 0) succ[i].push_back(j);

  GrowthEstimate best;
  for (const auto& comp : strong_components(succ)) {
    const std::size_t k = comp.size();
    if (k == 1 && m(comp[0], comp[0]) == 0) continue;  // no cycle through it
    GrowthEstimate est;
    if (k == 1) {
      est.rate = to_double(m(comp[0], comp[0]));
    } else {
      std::vector<double> block(k * k);
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = 0; j < k; ++j) block[i * k + j] = to_double(m(comp[i], comp[j]));
      est = power_iteration(block, k, options);
    }
    best.iterations += est.iterations;
    if (est.rate > best.rate) {
      best.rate = est.rate;
      best.residual = est.residual;
    }
  }
  return best;
}

GrowthEstimate language_growth_rate(const Automaton& aut,
                                    const PowerIterationOptions& options) {
  const std::size_t n = aut.state_count();
  const std::size_t k = aut.letter_count();
  std::vector<char> from_start(n, 0);
  std::deque<State> queue{aut.start()};
  from_start[aut.start()] = 1;
  std::vector<std::vector<State>> pred(n);
  for (State s = 0; s < n; ++s)
    for (std::size_t x = 0; x < k; ++x) pred[aut.next(s, static_cast<Letter>(x))].push_back(s);
  while (!queue.empty()) {
    const State s = queue.front();
    queue.pop_front();
    for (std::size_t x = 0; x < k; ++x) {
      const State t = aut.next(s, static_cast<Letter>(x));
      if (!from_start[t]) {
        from_start[t] = 1;
        queue.push_back(t);
      }
    }
  }
  std::vector<char> to_accept(n, 0);
  for (State s : aut.accept_states()) {
    to_accept[s] = 1;
    queue.push_back(s);
  }
  while (!queue.empty()) {
    const State s = queue.front();
    queue.pop_front();
    for (State p : pred[s])
      if (!to_accept[p]) {
        to_accept[p] = 1;
        queue.push_back(p);
      }
  }
  StateSet useful;
  for (State s : aut.interior_states())
    if (from_start[s] && to_accept[s]) useful.push_back(s);
  return growth_rate(transition_matrix(aut, useful), options);
}

// ---------------------------------------------------------------------------
// Exact counts

namespace {

std::vector<BigInt> step_back(const Automaton& aut, const std::vector<BigInt>& after) {
  std::vector<BigInt> out(aut.state_count(), 0);
  for (State s = 0; s < aut.state_count(); ++s) {
    if (s == aut.fail()) continue;
    for (std::size_t x = 0; x < aut.letter_count(); ++x) {
      const State t = aut.next(s, static_cast<Letter>(x));
      if (t != aut.fail()) out[s] += after[t];
    }
  }
  return out;
}

std::vector<BigInt> accept_indicator(const Automaton& aut) {
  std::vector<BigInt> v(aut.state_count(), 0);
  for (State s : aut.accept_states()) v[s] = 1;
  return v;
}

// Words of length k from each state to acceptance.
std::vector<BigInt> completion_vector(const Automaton& aut, unsigned k) {
  std::vector<BigInt> v = accept_indicator(aut);
  for (unsigned i = 0; i < k; ++i) v = step_back(aut, v);
  return v;
}

// viable[k][s]: some word of length k leads from s to acceptance.
std::vector<std::vector<char>> viability(const Automaton& aut, unsigned max_length) {
  std::vector<std::vector<char>> viable(max_length + 1,
                                        std::vector<char>(aut.state_count(), 0));
  for (State s : aut.accept_states()) viable[0][s] = 1;
  for (unsigned k = 1; k <= max_length; ++k)
    for (State s = 0; s < aut.state_count(); ++s) {
      if (s == aut.fail()) continue;
      for (std::size_t x = 0; x < aut.letter_count(); ++x)
        if (viable[k - 1][aut.next(s, static_cast<Letter>(x))]) {
          viable[k][s] = 1;
          break;
        }
    }
  return viable;
}

}  // namespace

std::vector<std::vector<BigInt>> completion_counts(const Automaton& aut,
                                                   unsigned max_length) {
  std::vector<std::vector<BigInt>> table;
  table.reserve(max_length + 1);
  table.push_back(accept_indicator(aut));
  for (unsigned k = 1; k <= max_length; ++k) table.push_back(step_back(aut, table.back()));
  return table;
}

BigInt count_sphere(const Automaton& aut, unsigned l) {
  return completion_vector(aut, l)[aut.start()];
}

BigInt count_ball(const Automaton& aut, unsigned l) {
  BigInt total = 1;
  std::vector<BigInt> v = accept_indicator(aut);
  for (unsigned m = 1; m <= l; ++m) {
    v = step_back(aut, v);
    total += v[aut.start()];
  }
  return total;
}

BigRational prefix_proportion(const Automaton& aut, const Word& prefix, unsigned l) {
  if (l < prefix.size()) throw InputError("prefix_proportion: l < |prefix|");
  const BigInt total = count_sphere(aut, l);
  if (total == 0) throw InputError("prefix_proportion: no accepted word of this length");
  const State s = aut.run(aut.start(), prefix);
  if (s == aut.fail()) return BigRational(0);
  const BigInt hits =
      completion_vector(aut, l - static_cast<unsigned>(prefix.size()))[s];
  return BigRational(hits, total);
}

BigRational end_state_proportion(const Automaton& aut, const Word& prefix,
                                 State target, unsigned l) {
  if (l < prefix.size()) throw InputError("end_state_proportion: l < |prefix|");
  if (target >= aut.state_count() || !aut.is_accept(target))
    throw InputError("end_state_proportion: target must be an accept state");
  const State s = aut.run(aut.start(), prefix);
  if (s == aut.fail()) throw InputError("end_state_proportion: prefix is rejected");
  const unsigned rest = l - static_cast<unsigned>(prefix.size());
  const BigInt conditioned = completion_vector(aut, rest)[s];
  if (conditioned == 0) throw InputError("end_state_proportion: empty conditioning set");

  std::vector<BigInt> v(aut.state_count(), 0);
  v[s] = 1;
  for (unsigned i = 0; i < rest; ++i) {
    std::vector<BigInt> next(aut.state_count(), 0);
    for (State q = 0; q < aut.state_count(); ++q) {
      if (v[q] == 0) continue;
      for (std::size_t x = 0; x < aut.letter_count(); ++x) {
        const State t = aut.next(q, static_cast<Letter>(x));
        if (t != aut.fail()) next[t] += v[q];
      }
    }
    v = std::move(next);
  }
  return BigRational(v[target], conditioned);
}

// ---------------------------------------------------------------------------
// Enumeration

void enumerate_sphere(const Automaton& aut, unsigned l,
                      const std::function<void(const Word&)>& visit,
                      std::optional<Letter> first) {
  if (l == 0) return;
  const auto viable = viability(aut, l);
  Word w(l);
  std::vector<State> at(l + 1);
  at[0] = aut.start();
  const std::size_t k = aut.letter_count();

  // Explicit stack of next-letter cursors per depth.
  std::vector<std::size_t> cursor(l + 1, 0);
  std::size_t depth = 0;
  if (first) {
    if (*first >= k) throw InputError("enumerate_sphere: shard letter out of range");
  }
  while (true) {
    if (depth == l) {
      visit(w);
      --depth;
      continue;
    }
    std::size_t& x = cursor[depth];
    const std::size_t limit = (depth == 0 && first) ? *first + 1u : k;
    if (depth == 0 && first && x < *first) x = *first;
    bool advanced = false;
    while (x < limit) {
      const State t = aut.next(at[depth], static_cast<Letter>(x));
      const Letter letter = static_cast<Letter>(x);
      ++x;
      if (viable[l - depth - 1][t]) {
        w[depth] = letter;
        at[depth + 1] = t;
        ++depth;
        cursor[depth] = 0;
        advanced = true;
        break;
      }
    }
    if (advanced) continue;
    if (depth == 0) return;
    --depth;
  }
}

void enumerate_sphere_rigidity(const Automaton& aut, unsigned l,
                               const RigidityVisitor& visit,
                               std::optional<Letter> first) {
  if (l == 0) return;
  const std::size_t n = aut.state_count();
  // maps[d][s] = state reached from s after reading the current prefix of
  // length d.
  std::vector<std::vector<State>> maps(l + 1, std::vector<State>(n));
  for (State s = 0; s < n; ++s) maps[0][s] = s;
  std::vector<char> seen(n, 0);
  std::vector<State> touched;

  // Reuse the plain walk; rebuild maps lazily along the common prefix.
  Word previous;
  enumerate_sphere(
      aut, l,
      [&](const Word& w) {
        std::size_t common = 0;
        while (common < previous.size() && previous[common] == w[common]) ++common;
        for (std::size_t d = common; d < l; ++d)
          for (State s = 0; s < n; ++s) maps[d + 1][s] = aut.next(maps[d][s], w[d]);
        previous = w;

        const auto& f = maps[l];
        bool rigid = true;
        State s = f[aut.start()];
        touched.clear();
        for (;;) {
          if (s == aut.fail() || !aut.is_accept(s)) {
            rigid = false;
            break;
          }
          if (seen[s]) break;
          seen[s] = 1;
          touched.push_back(s);
          s = f[s];
        }
        for (State t : touched) seen[t] = 0;
        visit(w, rigid);
      },
      first);
}

std::vector<Word> sphere_words(const Automaton& aut, unsigned l) {
  std::vector<Word> out;
  enumerate_sphere(aut, l, [&](const Word& w) { out.push_back(w); });
  return out;
}

BigInt rigid_sphere_count(const Automaton& aut, unsigned l) {
  std::uint64_t rigid = 0;
  enumerate_sphere_rigidity(aut, l, [&](const Word&, bool r) { rigid += r ? 1 : 0; });
  return BigInt(rigid);
}

// ---------------------------------------------------------------------------
// Pattern avoidance

GrowthEstimate avoidance_growth_rate(const Automaton& aut, const Word& pattern,
                                     const PowerIterationOptions& options) {
  return language_growth_rate(avoidance_product(aut, pattern), options);
}

BigInt count_avoiding(const Automaton& aut, const Word& pattern, unsigned l) {
  return count_sphere(avoidance_product(aut, pattern), l);
}

// ---------------------------------------------------------------------------
// Sampling

UniformSampler::UniformSampler(const Automaton& aut, unsigned length)
    : aut_(aut), length_(length), start_(aut.start()),
      table_(completion_counts(aut, length)) {
  if (table_[length_][start_] == 0)
    throw InputError("sample_uniform: no accepted word of length " + std::to_string(length));
}

Word UniformSampler::sample(std::mt19937_64& rng) const {
  Word w;
  w.reserve(length_);
  State s = start_;
  for (unsigned remaining = length_; remaining > 0; --remaining) {
    BigInt r = uniform_below(table_[remaining][s], rng);
    for (std::size_t x = 0; x < aut_.letter_count(); ++x) {
      const State t = aut_.next(s, static_cast<Letter>(x));
      if (t == aut_.fail()) continue;
      const BigInt& c = table_[remaining - 1][t];
      if (r < c) {
        w.push_back(static_cast<Letter>(x));
        s = t;
        break;
      }
      r -= c;
    }
  }
  return w;
}

Word sample_uniform(const Automaton& aut, unsigned l, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  return UniformSampler(aut, l).sample(rng);
}

}  // namespace loxogen
