#pragma once

// Exact arithmetic carriers and small shared utilities.
//
// All correlation coefficients produced by this library are exact rationals.
// Every coefficient lies in the module { m / (3 * 2^r) : m integer, r >= 0 },
// so reduced denominators always divide 3 * 2^r; helpers below let callers
// check that invariant cheaply.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace tmcorr {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;
// 113-bit mantissa float for the few places that need non-rational powers.
using Real = boost::multiprecision::cpp_bin_float_quad;

// Thrown on malformed arguments (CLI maps this to exit code 2).
struct ArgsError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a configured resource budget would be exceeded (CLI exit 3).
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

inline Int numerator(const Rat& q) { return boost::multiprecision::numerator(q); }
inline Int denominator(const Rat& q) { return boost::multiprecision::denominator(q); }

// q^e for integer e >= 0.
inline Rat rat_pow(const Rat& q, unsigned long e) {
  Rat acc(1);
  Rat base = q;
  while (e != 0) {
    if (e & 1UL) acc *= base;
    base *= base;
    e >>= 1UL;
  }
  return acc;
}

inline Rat rat_abs(const Rat& q) { return q < 0 ? Rat(-q) : q; }

// True iff the reduced denominator of q divides 3 * 2^r for some r >= 0,
// i.e. q is a member of the frequency module that carries all correlation
// values of the system.
inline bool in_frequency_module(const Rat& q) {
  Int d = denominator(q);
  if (d % 3 == 0) d /= 3;
  // d must now be a power of two.
  while (d % 2 == 0) d /= 2;
  return d == 1;
}

// Parse "p", "-p", "p/q" or a plain decimal like "0.25" into an exact Rat.
inline Rat parse_rational(const std::string& s) {
  if (s.empty()) throw ArgsError("empty rational literal");
  auto slash = s.find('/');
  try {
    if (slash != std::string::npos) {
      Int num(s.substr(0, slash));
      Int den(s.substr(slash + 1));
      if (den == 0) throw ArgsError("zero denominator in '" + s + "'");
      return Rat(num, den);
    }
    auto dot = s.find('.');
    if (dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      std::size_t frac_len = s.size() - dot - 1;
      if (digits.empty() || digits == "-" || digits == "+")
        throw ArgsError("malformed decimal '" + s + "'");
      Int num(digits);
      Int den(1);
      for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
      return Rat(num, den);
    }
    return Rat(Int(s));
  } catch (const std::exception&) {
    throw ArgsError("cannot parse rational '" + s + "'");
  }
}

inline std::string rat_to_string(const Rat& q) {
  return numerator(q).str() + "/" + denominator(q).str();
}

// Decimal rendering at `digits` significant digits (render-only; the exact
// field is always the source of truth).
inline std::string rat_to_decimal(const Rat& q, int digits = 12) {
  Real x(q);
  return x.str(digits, std::ios_base::fmtflags(0));
}

// floor(2q)/2: q truncated downward to the half-integer grid.  Used by the
// reported-value convention for depth-20 exponent masses (see asymptotics).
inline Rat floor_to_half_grid(const Rat& q) {
  Rat twice = 2 * q;
  Int fl = numerator(twice) / denominator(twice);
  if (twice < 0 && Rat(fl) != twice) fl -= 1;
  return Rat(fl, 2);
}

}  // namespace tmcorr
