#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>

#include "fsig/prime_field.hpp"
#include "fsig/rational.hpp"

namespace fsig {

// Nonnegative rational a / p^c with p-power denominator, kept canonical:
// p does not divide a unless a == 0, and a == 0 forces c == 0.
class PadicRational {
 public:
  PadicRational(std::uint64_t p, std::uint64_t a, std::uint32_t c)
      : p_(p), a_(a), c_(c) {
    if (!is_prime_u64(p) || p > kMaxPrime) {
      throw std::invalid_argument("p must be a prime below 2^31");
    }
    canonicalize();
  }

  std::uint64_t prime() const noexcept { return p_; }
  std::uint64_t numerator() const noexcept { return a_; }
  std::uint32_t scale() const noexcept { return c_; }

  Rational value() const { return Rational(BigInt(a_), big_pow(BigInt(p_), c_)); }

  // Converts an exact rational with p-power denominator; nullopt otherwise.
  static std::optional<PadicRational> from_rational(const Rational& t,
                                                    std::uint64_t p) {
    if (t < 0) return std::nullopt;
    BigInt den = fsig::denominator(t);
    std::uint32_t c = 0;
    while (den > 1) {
      if (den % p != 0) return std::nullopt;
      den /= p;
      ++c;
    }
    const BigInt num = fsig::numerator(t);
    if (num > BigInt(UINT64_MAX)) return std::nullopt;
    return PadicRational(p, static_cast<std::uint64_t>(num), c);
  }

  std::string to_string() const {
    if (c_ == 0) return std::to_string(a_);
    return std::to_string(a_) + "/" + std::to_string(p_) + "^" +
           std::to_string(c_);
  }

  friend bool operator==(const PadicRational& x, const PadicRational& y) {
    return x.p_ == y.p_ && x.a_ == y.a_ && x.c_ == y.c_;
  }

 private:
  void canonicalize() {
    if (a_ == 0) {
      c_ = 0;
      return;
    }
    while (c_ > 0 && a_ % p_ == 0) {
      a_ /= p_;
      --c_;
    }
  }

  std::uint64_t p_;
  std::uint64_t a_;
  std::uint32_t c_;
};

}  // namespace fsig
