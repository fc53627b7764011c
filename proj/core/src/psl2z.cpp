#include "loxogen/psl2z.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <map>
#include <unordered_map>

#include "loxogen/counting.hpp"
#include "loxogen/error.hpp"

namespace loxogen::psl2z {

namespace {

using boost::multiprecision::abs;

struct ExtGcd {
  BigInt g, x, y;  // a x + b y = g >= 0
};

ExtGcd ext_gcd(BigInt a, BigInt b) {
  BigInt x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    const BigInt q = floor_div(a, b);
    BigInt r = a - q * b;
    a = b;
    b = r;
    BigInt t = x0 - q * x1;
    x0 = x1;
    x1 = t;
    t = y0 - q * y1;
    y0 = y1;
    y1 = t;
  }
  if (a < 0) return {-a, -x0, -y0};
  return {a, x0, y0};
}

std::int64_t to_i64(const BigInt& v) {
  if (v > std::numeric_limits<std::int64_t>::max() / 4 ||
      v < std::numeric_limits<std::int64_t>::min() / 4)
    throw InputError("Farey search: coordinates too large for the bounded search");
  return v.convert_to<std::int64_t>();
}

// Element of SL(2, Z) sending u to infinity.
ProjMatrix to_infinity(const FareyVertex& u) {
  if (u.is_infinity()) return ProjMatrix::identity();
  // p s - q r = 1
  const ExtGcd e = ext_gcd(u.p, u.q);
  const BigInt s = e.x;
  const BigInt r = -e.y;
  return ProjMatrix(s, -r, -u.q, u.p);
}

}  // namespace

// ---------------------------------------------------------------------------
// Matrices

const Alphabet& alphabet() {
  static const Alphabet names({"A", "a", "B", "b"});
  return names;
}

Letter inverse(Letter x) {
  if (x > Bbar) throw InputError("letter outside the PSL(2,Z) alphabet");
  return static_cast<Letter>(x ^ 1u);
}

ProjMatrix::ProjMatrix(BigInt a, BigInt b, BigInt c, BigInt d)
    : m_{std::move(a), std::move(b), std::move(c), std::move(d)} {
  if (m_[0] * m_[3] - m_[1] * m_[2] != 1) throw InputError("matrix determinant must be 1");
  for (const BigInt& e : m_) {
    if (e == 0) continue;
    if (e < 0)
      for (BigInt& f : m_) f = -f;
    break;
  }
}

BigInt ProjMatrix::abs_trace() const { return abs(m_[0] + m_[3]); }

ProjMatrix ProjMatrix::inverse() const { return ProjMatrix(m_[3], -m_[1], -m_[2], m_[0]); }

std::string ProjMatrix::to_string() const {
  return "[[" + m_[0].str() + "," + m_[1].str() + "],[" + m_[2].str() + "," + m_[3].str() + "]]";
}

ProjMatrix operator*(const ProjMatrix& x, const ProjMatrix& y) {
  return ProjMatrix(x.a() * y.a() + x.b() * y.c(), x.a() * y.b() + x.b() * y.d(),
                    x.c() * y.a() + x.d() * y.c(), x.c() * y.b() + x.d() * y.d());
}

const ProjMatrix& generator(Letter x) {
  static const std::array<ProjMatrix, 4> gens = {
      ProjMatrix(1, 1, 0, 1), ProjMatrix(1, -1, 0, 1), ProjMatrix(1, 0, -1, 1),
      ProjMatrix(1, 0, 1, 1)};
  if (x > Bbar) throw InputError("letter outside the PSL(2,Z) alphabet");
  return gens[x];
}

ProjMatrix evaluate(const Word& w) {
  ProjMatrix m;
  for (Letter x : w) m = m * generator(x);
  return m;
}

IsometryKind classify_exact(const ProjMatrix& m) {
  return m.abs_trace() > 2 ? IsometryKind::Loxodromic : IsometryKind::Elliptic;
}

// ---------------------------------------------------------------------------
// Farey vertices

FareyVertex::FareyVertex(BigInt num, BigInt den) : p(std::move(num)), q(std::move(den)) {
  if (p == 0 && q == 0) throw InputError("0/0 is not a Farey vertex");
  if (q < 0 || (q == 0 && p < 0)) {
    p = -p;
    q = -q;
  }
  const BigInt g = gcd(p, q);
  if (g != 1) {
    p /= g;
    q /= g;
  }
}

BigInt FareyVertex::height() const { return abs(p) + q; }

std::string FareyVertex::to_string() const { return p.str() + "/" + q.str(); }

FareyVertex parse_vertex(std::string_view text) {
  auto parse_int = [&](std::string_view s) {
    std::size_t i = 0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) i = 1;
    if (i == s.size()) throw InputError("cannot parse Farey vertex '" + std::string(text) + "'");
    for (std::size_t k = i; k < s.size(); ++k)
      if (s[k] < '0' || s[k] > '9')
        throw InputError("cannot parse Farey vertex '" + std::string(text) + "'");
    BigInt v(std::string(s[0] == '+' ? s.substr(1) : s));
    return v;
  };
  const auto slash = text.find('/');
  if (slash == std::string_view::npos) return FareyVertex(parse_int(text), 1);
  return FareyVertex(parse_int(text.substr(0, slash)), parse_int(text.substr(slash + 1)));
}

FareyVertex act(const ProjMatrix& m, const FareyVertex& v) {
  return FareyVertex(m.a() * v.p + m.b() * v.q, m.c() * v.p + m.d() * v.q);
}

bool farey_adjacent(const FareyVertex& u, const FareyVertex& v) {
  if (u == v) throw InputError("farey_adjacent: vertices must differ");
  return abs(u.p * v.q - u.q * v.p) == 1;
}

// ---------------------------------------------------------------------------
// Primary distance

std::uint64_t farey_distance(const FareyVertex& u, const FareyVertex& v) {
  if (u == v) return 0;
  const FareyVertex x = act(to_infinity(u), v);
  if (x.q == 1) return 1;

  // Convergents c_{-1} = infinity, c_0, ..., c_n = x of the regular
  // expansion [a_0; a_1, ..., a_n]. c_k is adjacent to c_{k-1}, and also to
  // c_{k-2} exactly when a_k = 1.
  BigInt num = x.p, den = x.q;
  std::uint64_t before = 0;  // distance to c_{k-2}
  std::uint64_t last = 1;    // distance to c_{k-1}
  BigInt a = floor_div(num, den);
  BigInt rem = num - a * den;
  num = den;
  den = rem;
  while (den != 0) {
    a = num / den;
    rem = num % den;
    num = den;
    den = rem;
    std::uint64_t d = last + 1;
    if (a == 1) d = std::min(d, before + 1);
    before = last;
    last = d;
  }
  return last;
}

// ---------------------------------------------------------------------------
// Height-bounded search

namespace {

struct Key {
  std::int64_t p, q;
  bool operator==(const Key& o) const { return p == o.p && q == o.q; }
};

struct KeyHash {
  std::size_t operator()(const Key& k) const {
    return std::hash<std::uint64_t>()(static_cast<std::uint64_t>(k.p) * 0x9E3779B97F4A7C15ull ^
                                      static_cast<std::uint64_t>(k.q));
  }
};

std::int64_t height(const Key& k) { return (k.p < 0 ? -k.p : k.p) + k.q; }

std::int64_t floor_div64(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div64(std::int64_t a, std::int64_t b) { return -floor_div64(-a, b); }

// Calls f on every neighbor of v of height <= bound.
template <class F>
void for_each_neighbor(const Key& v, std::int64_t bound, F&& f) {
  if (v.q == 0) {
    for (std::int64_t n = -(bound - 1); n <= bound - 1; ++n) f(Key{n, 1});
    return;
  }
  // Neighbors r/s satisfy p s - q r = +-1. One solution (r0, s0) of the +1
  // equation, shifted by multiples of (p, q), gives all of them once signs
  // are normalized.
  std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1, a = v.p, b = v.q;
  while (b != 0) {
    const std::int64_t t = floor_div64(a, b);
    std::int64_t r = a - t * b;
    a = b;
    b = r;
    r = x0 - t * x1;
    x0 = x1;
    x1 = r;
    r = y0 - t * y1;
    y0 = y1;
    y1 = r;
  }
  if (a < 0) {
    x0 = -x0;
    y0 = -y0;
  }
  const std::int64_t s0 = x0, r0 = -y0;
  const std::int64_t tmin = ceil_div64(-bound - s0, v.q);
  const std::int64_t tmax = floor_div64(bound - s0, v.q);
  for (std::int64_t t = tmin; t <= tmax; ++t) {
    Key w{r0 + t * v.p, s0 + t * v.q};
    if (w.q < 0 || (w.q == 0 && w.p < 0)) w = Key{-w.p, -w.q};
    if (height(w) <= bound) f(w);
  }
}

Key small_key(const FareyVertex& v) { return Key{to_i64(v.p), to_i64(v.q)}; }

}  // namespace

std::optional<std::uint64_t> farey_distance_oracle(const FareyVertex& u, const FareyVertex& v,
                                                   std::int64_t height_bound) {
  if (u == v) return 0;
  const Key ku = small_key(u), kv = small_key(v);
  if (height(ku) > height_bound || height(kv) > height_bound) return std::nullopt;

  using Map = std::unordered_map<Key, std::uint64_t, KeyHash>;
  Map side[2];
  std::vector<Key> frontier[2] = {{ku}, {kv}};
  side[0][ku] = 0;
  side[1][kv] = 0;
  std::uint64_t depth[2] = {0, 0};
  while (!frontier[0].empty() && !frontier[1].empty()) {
    const int s = frontier[0].size() <= frontier[1].size() ? 0 : 1;
    Map& mine = side[s];
    const Map& other = side[1 - s];
    std::vector<Key> next;
    std::optional<std::uint64_t> best;
    for (const Key& k : frontier[s]) {
      for_each_neighbor(k, height_bound, [&](const Key& w) {
        if (auto it = other.find(w); it != other.end()) {
          const std::uint64_t total = depth[s] + 1 + it->second;
          if (!best || total < *best) best = total;
        }
        if (mine.emplace(w, depth[s] + 1).second) next.push_back(w);
      });
    }
    if (best) return best;
    ++depth[s];
    frontier[s] = std::move(next);
  }
  return std::nullopt;
}

std::uint64_t farey_distance_oracle(const FareyVertex& u, const FareyVertex& v) {
  std::int64_t bound = 2 * (to_i64(u.height()) + to_i64(v.height()));
  for (;;) {
    if (auto d = farey_distance_oracle(u, v, bound)) return *d;
    if (bound > std::numeric_limits<std::int64_t>::max() / 8)
      throw InputError("Farey oracle: height bound overflow");
    bound *= 2;
  }
}

FareyBallSearch::FareyBallSearch(const FareyVertex& source, std::int64_t height_bound) {
  const Key start = small_key(source);
  if (height(start) > height_bound) return;
  std::unordered_map<Key, std::uint64_t, KeyHash> seen{{start, 0}};
  std::deque<Key> queue{start};
  while (!queue.empty()) {
    const Key k = queue.front();
    queue.pop_front();
    const std::uint64_t d = seen[k];
    for_each_neighbor(k, height_bound, [&](const Key& w) {
      if (seen.emplace(w, d + 1).second) queue.push_back(w);
    });
  }
  for (const auto& [k, d] : seen) dist_.emplace(std::make_pair(k.p, k.q), d);
}

std::optional<std::uint64_t> FareyBallSearch::distance(const FareyVertex& v) const {
  if (v.p > std::numeric_limits<std::int64_t>::max() || v.q > std::numeric_limits<std::int64_t>::max() ||
      v.p < std::numeric_limits<std::int64_t>::min())
    return std::nullopt;
  auto it = dist_.find({v.p.convert_to<std::int64_t>(), v.q.convert_to<std::int64_t>()});
  if (it == dist_.end()) return std::nullopt;
  return it->second;
}

// ---------------------------------------------------------------------------
// Ladder search

std::uint64_t farey_distance_ladder(const FareyVertex& u, const FareyVertex& v) {
  if (u == v) return 0;
  // Work in coordinates where u is infinity; the ladder from infinity to x
  // is the fan of vertical triangles plus the Stern-Brocot path down to x.
  const FareyVertex x = act(to_infinity(u), v);
  std::vector<FareyVertex> ladder{FareyVertex::infinity()};
  if (x.q == 1) {
    ladder.push_back(x);
  } else {
    const BigInt n = floor_div(x.p, x.q);
    FareyVertex left(n, 1), right(n + 1, 1);
    ladder.push_back(left);
    ladder.push_back(right);
    for (;;) {
      FareyVertex mid(left.p + right.p, left.q + right.q);
      ladder.push_back(mid);
      if (mid == x) break;
      // x < mid  <=>  x.p * mid.q < mid.p * x.q  (denominators positive)
      if (x.p * mid.q < mid.p * x.q)
        right = mid;
      else
        left = mid;
    }
  }
  const std::size_t n = ladder.size();
  std::size_t target = 0;
  for (std::size_t i = 0; i < n; ++i)
    if (ladder[i] == x) target = i;
  std::vector<std::uint64_t> dist(n, std::numeric_limits<std::uint64_t>::max());
  dist[0] = 0;
  std::deque<std::size_t> queue{0};
  while (!queue.empty()) {
    const std::size_t i = queue.front();
    queue.pop_front();
    if (i == target) return dist[i];
    for (std::size_t j = 0; j < n; ++j) {
      if (dist[j] != std::numeric_limits<std::uint64_t>::max()) continue;
      if (abs(ladder[i].p * ladder[j].q - ladder[i].q * ladder[j].p) != 1) continue;
      dist[j] = dist[i] + 1;
      queue.push_back(j);
    }
  }
  throw std::logic_error("ladder search did not reach its target");
}

// ---------------------------------------------------------------------------
// Automaton

Automaton build_automaton() {
  const Alphabet& alpha = alphabet();
  std::vector<Word> banned;
  for (const char* f : {"ABA", "aba", "BAB", "bab", "ABa", "BAb", "abA", "baB", "Aa", "aA",
                        "Bb", "bB"})
    banned.push_back(parse_word(alpha, f));
  const Automaton raw = factor_avoiding_automaton(alpha, banned);

  // A single-letter state x is the x not preceded by the letter y that would
  // make "yx" a tracked suffix.
  std::vector<std::string> names = raw.state_names();
  for (State s : raw.interior_states()) {
    const std::string& name = raw.state_name(s);
    if (name.size() != 1) continue;
    for (const std::string& y : alpha.names())
      if (raw.find_state(y + name)) names[s] = "X¬" + y + " " + name;
  }
  std::vector<State> table;
  table.reserve(raw.state_count() * raw.letter_count());
  for (State s = 0; s < raw.state_count(); ++s)
    for (std::size_t x = 0; x < raw.letter_count(); ++x)
      table.push_back(raw.next(s, static_cast<Letter>(x)));
  return Automaton(alpha, raw.state_count(), raw.start(), raw.fail(), raw.accept_states(),
                   std::move(table), std::move(names));
}

UniquenessReport uniqueness_report(unsigned max_length, std::size_t keep_collisions) {
  UniquenessReport report;
  report.max_length = max_length;
  report.accepted.assign(max_length + 1, 0);
  report.distinct.assign(max_length + 1, 0);
  report.cayley_sphere.assign(max_length + 1, 0);

  const Automaton aut = build_automaton();
  std::map<ProjMatrix, Word> first_word{{ProjMatrix::identity(), Word{}}};
  for (unsigned l = 1; l <= max_length; ++l) {
    std::map<ProjMatrix, char> this_length;
    enumerate_sphere(aut, l, [&](const Word& w) {
      ++report.accepted[l];
      const ProjMatrix m = evaluate(w);
      this_length.emplace(m, 1);
      auto [it, inserted] = first_word.emplace(m, w);
      if (!inserted) {
        ++report.collision_count;
        if (report.collisions.size() < keep_collisions) report.collisions.emplace_back(it->second, w);
      }
    });
    report.distinct[l] = this_length.size();
  }

  std::map<ProjMatrix, unsigned> ball{{ProjMatrix::identity(), 0}};
  std::vector<ProjMatrix> layer{ProjMatrix::identity()};
  for (unsigned l = 1; l <= max_length; ++l) {
    std::vector<ProjMatrix> next;
    for (const ProjMatrix& m : layer)
      for (Letter x = 0; x < 4; ++x) {
        ProjMatrix y = m * generator(x);
        if (ball.emplace(y, l).second) next.push_back(std::move(y));
      }
    report.cayley_sphere[l] = next.size();
    layer = std::move(next);
  }
  for (const auto& [m, l] : ball)
    if (!first_word.count(m)) ++report.unrepresented;
  return report;
}

}  // namespace loxogen::psl2z
