#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace fsig {

// Largest supported modulus. Keeping p below 2^31 lets products of two
// reduced residues fit comfortably in 64 bits.
inline constexpr std::uint64_t kMaxPrime = (std::uint64_t{1} << 31) - 1;

inline bool is_prime_u64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d : {2ull, 3ull, 5ull}) {
    if (n % d == 0) return n == d;
  }
  // Trial division over 6k +- 1; n <= 2^31 keeps this fast and exact.
  for (std::uint64_t d = 7; d * d <= n; d += 6) {
    if (n % d == 0 || n % (d + 4) == 0) return false;
  }
  return true;
}

// A residue together with its modulus. Elements from different fields never
// mix; binary operations go through PrimeField which owns a single modulus.
struct FpElement {
  std::uint64_t value = 0;  // reduced, in [0, p)
  std::uint64_t p = 2;
};

// Arithmetic in Z/p for a word-sized prime p. The modulus is validated once
// at construction; all operations assume reduced inputs.
class PrimeField {
 public:
  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p > kMaxPrime) {
      throw std::invalid_argument("modulus " + std::to_string(p) +
                                  " exceeds 2^31 - 1");
    }
    if (!is_prime_u64(p)) {
      throw std::invalid_argument("modulus " + std::to_string(p) +
                                  " is not prime");
    }
  }

  std::uint64_t modulus() const noexcept { return p_; }

  std::uint64_t reduce(std::uint64_t a) const noexcept { return a % p_; }

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const noexcept {
    const std::uint64_t s = a + b;
    return s >= p_ ? s - p_ : s;
  }

  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const noexcept {
    return a >= b ? a - b : a + p_ - b;
  }

  std::uint64_t neg(std::uint64_t a) const noexcept {
    return a == 0 ? 0 : p_ - a;
  }

  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const noexcept {
    return (a * b) % p_;  // a, b < 2^31, so the product fits in 64 bits
  }

  // Extended Euclid; throws on zero.
  std::uint64_t inv(std::uint64_t a) const {
    if (a == 0) {
      throw std::domain_error("inverse of zero in F_" + std::to_string(p_));
    }
    std::int64_t t = 0, new_t = 1;
    std::int64_t r = static_cast<std::int64_t>(p_);
    std::int64_t new_r = static_cast<std::int64_t>(a);
    while (new_r != 0) {
      const std::int64_t quot = r / new_r;
      t -= quot * new_t;
      std::swap(t, new_t);
      r -= quot * new_r;
      std::swap(r, new_r);
    }
    // r == gcd == 1 because p is prime and a != 0.
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return static_cast<std::uint64_t>(t);
  }

  std::uint64_t pow(std::uint64_t base, std::uint64_t exp) const noexcept {
    std::uint64_t result = 1;
    std::uint64_t b = reduce(base);
    while (exp > 0) {
      if (exp & 1) result = mul(result, b);
      b = mul(b, b);
      exp >>= 1;
    }
    return result;
  }

 private:
  std::uint64_t p_;
};

// Multiplicative inverse of a nonzero residue.
inline FpElement fp_inverse(const FpElement& x) {
  const PrimeField field(x.p);
  return FpElement{field.inv(field.reduce(x.value)), x.p};
}

}  // namespace fsig
