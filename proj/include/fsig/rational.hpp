#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

#include "fsig/errors.hpp"

namespace fsig {

// Arbitrary-precision integers and rationals. All signature values, lengths
// and volumes are carried exactly; decimal output is display-only.
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt numerator(const Rational& v) {
  return boost::multiprecision::numerator(v);
}

inline BigInt denominator(const Rational& v) {
  return boost::multiprecision::denominator(v);
}

inline BigInt big_pow(const BigInt& base, unsigned exp) {
  return boost::multiprecision::pow(base, exp);
}

inline BigInt pow10_big(unsigned exp) { return big_pow(BigInt(10), exp); }

// base^exp in uint64_t, throwing std::overflow_error when the result does not
// fit. Used for basis sizes q = p^c and grid extents.
inline std::uint64_t pow_u64_checked(std::uint64_t base, unsigned exp) {
  std::uint64_t result = 1;
  for (unsigned i = 0; i < exp; ++i) {
    if (base != 0 &&
        result > std::numeric_limits<std::uint64_t>::max() / base) {
      throw std::overflow_error("integer power overflows 64 bits");
    }
    result *= base;
  }
  return result;
}

// floor(sqrt(x)) for x >= 0.
inline BigInt isqrt_floor(const BigInt& x) {
  if (x < 0) throw std::domain_error("isqrt_floor of negative value");
  return boost::multiprecision::sqrt(x);
}

// Smallest rational with denominator `scale` that is >= sqrt(x). Used to turn
// analytic error bounds into exact rational certificates.
inline Rational sqrt_upper_bound(const Rational& x,
                                 const BigInt& scale = BigInt(1000000000)) {
  if (x < 0) throw std::domain_error("sqrt_upper_bound of negative value");
  if (scale <= 0) throw std::invalid_argument("scale must be positive");
  if (x == 0) return Rational(0);
  const BigInt a = numerator(x);
  const BigInt b = denominator(x);
  // Want the least integer r with (r*b)^2 >= scale^2 * a * b.
  const BigInt u = scale * scale * a * b;
  const BigInt s = isqrt_floor(u);
  BigInt target = (s * s == u) ? s : s + 1;  // ceil(sqrt(u))
  BigInt r = (target + b - 1) / b;
  return Rational(r, scale);
}

// Fixed-precision decimal rendering with round-half-even, default 12
// significant digits. Exact zero renders as "0"; other values keep all
// `sig_digits` digits (no trailing-zero stripping), so output is byte-stable.
inline std::string decimal_string(const Rational& v, int sig_digits = 12) {
  if (sig_digits < 1) {
    throw std::invalid_argument("sig_digits must be positive");
  }
  if (v == 0) return "0";

  BigInt num = numerator(v);
  const BigInt den = denominator(v);
  const bool negative = num < 0;
  if (negative) num = -num;

  // Locate e10 = floor(log10(num/den)) starting from digit-count estimate.
  auto cmp_pow10 = [&](long e) {
    // sign of v - 10^e
    if (e >= 0) return num.compare(den * pow10_big(static_cast<unsigned>(e)));
    return (num * pow10_big(static_cast<unsigned>(-e))).compare(den);
  };
  long e10 = static_cast<long>(num.str().size()) -
             static_cast<long>(den.str().size());
  while (cmp_pow10(e10) < 0) --e10;
  while (cmp_pow10(e10 + 1) >= 0) ++e10;

  // M = round_half_even(v * 10^(sig_digits - 1 - e10)), in [10^(sig-1), 10^sig].
  const long shift = sig_digits - 1 - e10;
  BigInt p = num, q = den;
  if (shift >= 0) {
    p *= pow10_big(static_cast<unsigned>(shift));
  } else {
    q *= pow10_big(static_cast<unsigned>(-shift));
  }
  BigInt m = p / q;
  const BigInt rem = p % q;
  const BigInt twice = rem * 2;
  if (twice > q || (twice == q && (m & 1) != 0)) ++m;
  if (m >= pow10_big(static_cast<unsigned>(sig_digits))) {
    m /= 10;
    ++e10;
  }

  std::string digits = m.str();
  std::string body;
  if (e10 >= sig_digits) {
    body = digits + std::string(static_cast<std::size_t>(e10) - sig_digits + 1,
                                '0');
  } else if (e10 >= 0) {
    if (e10 == sig_digits - 1) {
      body = digits;
    } else {
      body = digits.substr(0, static_cast<std::size_t>(e10) + 1) + "." +
             digits.substr(static_cast<std::size_t>(e10) + 1);
    }
  } else {
    body = "0." + std::string(static_cast<std::size_t>(-e10) - 1, '0') +
           digits;
  }
  return negative ? "-" + body : body;
}

// Parses "a", "-a" or "a/b" with b > 0. Whitespace is not accepted.
inline Rational parse_rational(const std::string& text) {
  auto is_int = [](const std::string& s, bool allow_sign) {
    if (s.empty()) return false;
    std::size_t i = (allow_sign && (s[0] == '-' || s[0] == '+')) ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i) {
      if (s[i] < '0' || s[i] > '9') return false;
    }
    return true;
  };
  const std::size_t slash = text.find('/');
  if (slash == std::string::npos) {
    if (!is_int(text, true)) {
      throw std::invalid_argument("not a rational literal: '" + text + "'");
    }
    return Rational(BigInt(text));
  }
  const std::string ns = text.substr(0, slash);
  const std::string ds = text.substr(slash + 1);
  if (!is_int(ns, true) || !is_int(ds, false)) {
    throw std::invalid_argument("not a rational literal: '" + text + "'");
  }
  const BigInt d(ds);
  if (d == 0) throw std::invalid_argument("zero denominator: '" + text + "'");
  return Rational(BigInt(ns), d);
}

}  // namespace fsig
