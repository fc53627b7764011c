#include "loxogen/bigint.hpp"

#include <iomanip>
#include <sstream>

#include "loxogen/error.hpp"

namespace loxogen {

BigInt uniform_below(const BigInt& bound, std::mt19937_64& rng) {
  if (bound <= 0) throw InputError("uniform_below: bound must be positive");
  const std::size_t bits = boost::multiprecision::msb(bound) + 1;
  const std::size_t words = (bits + 63) / 64;
  const std::size_t excess = words * 64 - bits;
  // Rejection sampling on the smallest power of two covering bound.
  for (;;) {
    BigInt candidate = 0;
    for (std::size_t i = 0; i < words; ++i) {
      candidate <<= 64;
      candidate += rng();
    }
    candidate >>= excess;
    if (candidate < bound) return candidate;
  }
}

double to_double(const BigRational& q) { return q.convert_to<double>(); }

double to_double(const BigInt& n) { return n.convert_to<double>(); }

std::string to_string(const BigRational& q) {
  const BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

std::string to_decimal(const BigRational& q, int digits) {
  BigInt num = boost::multiprecision::numerator(q);
  const BigInt den = boost::multiprecision::denominator(q);
  const bool negative = num < 0;
  if (negative) num = -num;
  BigInt scale = 1;
  for (int i = 0; i < digits; ++i) scale *= 10;
  // Round half up on the scaled value.
  BigInt scaled = (num * scale * 2 + den) / (den * 2);
  const BigInt whole = scaled / scale;
  const BigInt frac = scaled % scale;
  std::ostringstream out;
  if (negative && scaled != 0) out << '-';
  out << whole.str();
  if (digits > 0) {
    std::string f = frac.str();
    out << '.' << std::string(static_cast<std::size_t>(digits) - f.size(), '0') << f;
  }
  return out.str();
}

BigInt floor_div(const BigInt& a, const BigInt& b) {
  BigInt q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

}  // namespace loxogen
