#pragma once

#include <cstdint>
#include <random>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace loxogen {

using BigInt = boost::multiprecision::cpp_int;
using BigRational = boost::multiprecision::cpp_rational;

/// Uniform integer in [0, bound). `bound` must be positive.
BigInt uniform_below(const BigInt& bound, std::mt19937_64& rng);

double to_double(const BigRational& q);
double to_double(const BigInt& n);

/// "p/q" with q > 0, or "p" when q == 1.
std::string to_string(const BigRational& q);

/// Fixed-point decimal with `digits` digits after the point.
std::string to_decimal(const BigRational& q, int digits = 12);

/// Floor division, rounding toward negative infinity.
BigInt floor_div(const BigInt& a, const BigInt& b);

}  // namespace loxogen
