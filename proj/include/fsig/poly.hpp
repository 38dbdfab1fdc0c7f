#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "fsig/errors.hpp"
#include "fsig/prime_field.hpp"
#include "fsig/rational.hpp"

namespace fsig {

inline constexpr unsigned kMaxVars = 8;

// Exponent vector of a monomial in up to kMaxVars variables. Components are
// 32-bit; overflow in sums and scalings is checked.
class ExponentVec {
 public:
  explicit ExponentVec(unsigned nvars) : n_(nvars) {
    if (nvars < 1 || nvars > kMaxVars) {
      throw std::invalid_argument("variable count must be in [1, 8]");
    }
  }

  ExponentVec(unsigned nvars, std::initializer_list<std::uint32_t> exps)
      : ExponentVec(nvars) {
    if (exps.size() != nvars) {
      throw std::invalid_argument("exponent count does not match nvars");
    }
    std::size_t i = 0;
    for (std::uint32_t e : exps) e_[i++] = e;
  }

  unsigned size() const noexcept { return n_; }

  std::uint32_t operator[](unsigned i) const noexcept { return e_[i]; }
  void set(unsigned i, std::uint32_t v) noexcept { e_[i] = v; }

  std::uint64_t degree() const noexcept {
    std::uint64_t d = 0;
    for (unsigned i = 0; i < n_; ++i) d += e_[i];
    return d;
  }

  ExponentVec plus(const ExponentVec& other) const {
    ExponentVec out(n_);
    for (unsigned i = 0; i < n_; ++i) {
      const std::uint64_t s =
          std::uint64_t{e_[i]} + std::uint64_t{other.e_[i]};
      if (s > UINT32_MAX) {
        throw std::overflow_error("monomial exponent exceeds 32 bits");
      }
      out.e_[i] = static_cast<std::uint32_t>(s);
    }
    return out;
  }

  ExponentVec scaled(std::uint64_t factor) const {
    ExponentVec out(n_);
    for (unsigned i = 0; i < n_; ++i) {
      const std::uint64_t s = std::uint64_t{e_[i]} * factor;
      if (factor != 0 && (s / factor != e_[i] || s > UINT32_MAX)) {
        throw std::overflow_error("monomial exponent exceeds 32 bits");
      }
      out.e_[i] = static_cast<std::uint32_t>(s);
    }
    return out;
  }

  bool divides(const ExponentVec& other) const noexcept {
    for (unsigned i = 0; i < n_; ++i) {
      if (e_[i] > other.e_[i]) return false;
    }
    return true;
  }

  friend bool operator==(const ExponentVec& a, const ExponentVec& b) {
    if (a.n_ != b.n_) return false;
    for (unsigned i = 0; i < a.n_; ++i) {
      if (a.e_[i] != b.e_[i]) return false;
    }
    return true;
  }

  // Lexicographic order on (x_1, ..., x_n).
  friend std::strong_ordering operator<=>(const ExponentVec& a,
                                          const ExponentVec& b) {
    for (unsigned i = 0; i < a.n_ && i < b.n_; ++i) {
      if (a.e_[i] != b.e_[i]) return a.e_[i] <=> b.e_[i];
    }
    return a.n_ <=> b.n_;
  }

 private:
  std::array<std::uint32_t, kMaxVars> e_{};
  unsigned n_;
};

inline std::string variable_name(unsigned index, unsigned nvars) {
  if (nvars <= 4) {
    static constexpr const char* kNames[4] = {"x", "y", "z", "w"};
    return kNames[index];
  }
  return "x" + std::to_string(index + 1);
}

// Polynomial over F_p with sparse monomial support. Terms map exponent
// vectors to nonzero reduced coefficients; lexicographic key order makes the
// canonical printing deterministic.
class SparsePoly {
 public:
  SparsePoly(unsigned nvars, std::uint64_t p) : n_(nvars), field_(p) {
    if (nvars < 1 || nvars > kMaxVars) {
      throw std::invalid_argument("variable count must be in [1, 8]");
    }
  }

  static SparsePoly constant(unsigned nvars, std::uint64_t p,
                             std::uint64_t value) {
    SparsePoly out(nvars, p);
    out.add_term(ExponentVec(nvars), value);
    return out;
  }

  static SparsePoly monomial(unsigned nvars, std::uint64_t p,
                             const ExponentVec& e, std::uint64_t coeff = 1) {
    SparsePoly out(nvars, p);
    out.add_term(e, coeff);
    return out;
  }

  unsigned nvars() const noexcept { return n_; }
  std::uint64_t modulus() const noexcept { return field_.modulus(); }
  const PrimeField& field() const noexcept { return field_; }

  const std::map<ExponentVec, std::uint64_t>& terms() const noexcept {
    return terms_;
  }

  bool is_zero() const noexcept { return terms_.empty(); }
  std::size_t term_count() const noexcept { return terms_.size(); }

  bool has_constant_term() const {
    return terms_.find(ExponentVec(n_)) != terms_.end();
  }

  // Adds coeff * x^e, accumulating mod p and dropping cancelled terms.
  void add_term(const ExponentVec& e, std::uint64_t coeff) {
    if (e.size() != n_) {
      throw std::invalid_argument("exponent vector has wrong arity");
    }
    const std::uint64_t c = field_.reduce(coeff);
    if (c == 0) return;
    auto [it, inserted] = terms_.emplace(e, c);
    if (!inserted) {
      it->second = field_.add(it->second, c);
      if (it->second == 0) terms_.erase(it);
    }
  }

  SparsePoly& operator+=(const SparsePoly& other) {
    check_compatible(other);
    for (const auto& [e, c] : other.terms_) add_term(e, c);
    return *this;
  }

  SparsePoly& operator-=(const SparsePoly& other) {
    check_compatible(other);
    for (const auto& [e, c] : other.terms_) add_term(e, field_.neg(c));
    return *this;
  }

  friend SparsePoly operator+(SparsePoly a, const SparsePoly& b) {
    a += b;
    return a;
  }

  friend SparsePoly operator-(SparsePoly a, const SparsePoly& b) {
    a -= b;
    return a;
  }

  friend SparsePoly operator*(const SparsePoly& a, const SparsePoly& b) {
    a.check_compatible(b);
    SparsePoly out(a.n_, a.modulus());
    for (const auto& [ea, ca] : a.terms_) {
      for (const auto& [eb, cb] : b.terms_) {
        out.add_term(ea.plus(eb), a.field_.mul(ca, cb));
      }
    }
    return out;
  }

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) {
    return a.n_ == b.n_ && a.modulus() == b.modulus() && a.terms_ == b.terms_;
  }

  // Canonical form: terms in descending lexicographic order, explicit '*'
  // between factors, '^' for exponents above 1, unit coefficients omitted.
  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      if (!out.empty()) out += "+";
      const ExponentVec& e = it->first;
      std::string mono;
      for (unsigned i = 0; i < n_; ++i) {
        if (e[i] == 0) continue;
        if (!mono.empty()) mono += "*";
        mono += variable_name(i, n_);
        if (e[i] > 1) mono += "^" + std::to_string(e[i]);
      }
      if (mono.empty()) {
        out += std::to_string(it->second);
      } else if (it->second == 1) {
        out += mono;
      } else {
        out += std::to_string(it->second) + "*" + mono;
      }
    }
    return out;
  }

 private:
  void check_compatible(const SparsePoly& other) const {
    if (n_ != other.n_ || modulus() != other.modulus()) {
      throw std::invalid_argument("polynomials from different rings");
    }
  }

  unsigned n_;
  PrimeField field_;
  std::map<ExponentVec, std::uint64_t> terms_;
};

// Bracket parameters for the Frobenius power m^[q] = (x_1^q, ..., x_n^q),
// q = p^c. Monomials with any component >= q vanish in R / m^[q].
struct TruncationParams {
  std::uint64_t p;
  std::uint32_t c;
  unsigned n;
  std::uint64_t q;
  std::uint64_t basis_budget;

  TruncationParams(std::uint64_t prime, std::uint32_t exponent, unsigned nvars,
                   std::uint64_t budget = kDefaultBasisBudget)
      : p(prime), c(exponent), n(nvars), basis_budget(budget) {
    if (nvars < 1 || nvars > kMaxVars) {
      throw std::invalid_argument("variable count must be in [1, 8]");
    }
    PrimeField check(prime);  // validates primality and size
    (void)check;
    try {
      q = pow_u64_checked(p, c);
    } catch (const std::overflow_error&) {
      throw capacity_error("q = p^c exceeds 64 bits");
    }
  }

  static constexpr std::uint64_t kDefaultBasisBudget = 2'000'000;

  BigInt basis_size() const { return big_pow(BigInt(q), n); }

  // q^n as a machine word, enforcing the configured budget.
  std::uint64_t basis_size_checked() const {
    const BigInt size = basis_size();
    if (size > BigInt(basis_budget)) {
      throw capacity_error("quotient basis of size " + size.str() +
                           " exceeds budget " + std::to_string(basis_budget));
    }
    return static_cast<std::uint64_t>(size);
  }
};

// Image of f in R / m^[q]: terms with any exponent >= q are dropped.
inline SparsePoly truncate(const SparsePoly& f, const TruncationParams& tp) {
  if (f.nvars() != tp.n) {
    throw std::invalid_argument("truncation arity mismatch");
  }
  SparsePoly out(f.nvars(), f.modulus());
  for (const auto& [e, c] : f.terms()) {
    bool keep = true;
    for (unsigned i = 0; i < f.nvars() && keep; ++i) {
      if (e[i] >= tp.q) keep = false;
    }
    if (keep) out.add_term(e, c);
  }
  return out;
}

// f(x^(p^k)): the k-th Frobenius twist. Over F_p this equals f^(p^k), so
// exponents scale by p^k and coefficients are fixed (Fermat).
inline SparsePoly frobenius_substitute(const SparsePoly& f, unsigned k) {
  const std::uint64_t scale = pow_u64_checked(f.modulus(), k);
  SparsePoly out(f.nvars(), f.modulus());
  for (const auto& [e, c] : f.terms()) {
    out.add_term(e.scaled(scale), c);
  }
  return out;
}

// Product truncated to the monomial basis of R / m^[q].
inline SparsePoly mul_truncated(const SparsePoly& f, const SparsePoly& g,
                                const TruncationParams& tp) {
  if (f.nvars() != tp.n || g.nvars() != tp.n) {
    throw std::invalid_argument("truncation arity mismatch");
  }
  SparsePoly out(tp.n, f.modulus());
  for (const auto& [ef, cf] : f.terms()) {
    for (const auto& [eg, cg] : g.terms()) {
      bool keep = true;
      ExponentVec e(tp.n);
      for (unsigned i = 0; i < tp.n; ++i) {
        const std::uint64_t s = std::uint64_t{ef[i]} + std::uint64_t{eg[i]};
        if (s >= tp.q) {
          keep = false;
          break;
        }
        if (s > UINT32_MAX) {
          throw std::overflow_error("monomial exponent exceeds 32 bits");
        }
        e.set(i, static_cast<std::uint32_t>(s));
      }
      if (keep) out.add_term(e, f.field().mul(cf, cg));
    }
  }
  return out;
}

namespace detail {

// g^e mod m^[q] by binary exponentiation; truncation commutes with products.
inline SparsePoly pow_truncated(SparsePoly base, std::uint64_t e,
                                const TruncationParams& tp) {
  SparsePoly result = SparsePoly::constant(tp.n, base.modulus(), 1);
  while (e > 0) {
    if (e & 1) {
      result = mul_truncated(result, base, tp);
      if (result.is_zero()) return result;
    }
    e >>= 1;
    if (e > 0) base = mul_truncated(base, base, tp);
  }
  return result;
}

}  // namespace detail

// f^a mod m^[q] via the base-p expansion of a: f^a is the product over base-p
// digits d_i of Frob^i(f)^(d_i). Each twist is pre-truncated so intermediate
// exponents stay below q, and the running product is truncated after every
// multiplication.
inline SparsePoly power_mod(const SparsePoly& f, std::uint64_t a,
                            const TruncationParams& tp) {
  if (f.nvars() != tp.n || f.modulus() != tp.p) {
    throw std::invalid_argument("polynomial does not match truncation ring");
  }
  SparsePoly result = SparsePoly::constant(tp.n, tp.p, 1);
  if (a == 0) return result;
  if (f.is_zero()) return SparsePoly(tp.n, tp.p);

  std::uint64_t scale = 1;  // p^i for the current digit
  std::uint64_t rest = a;
  for (unsigned i = 0; rest > 0; ++i) {
    const std::uint64_t digit = rest % tp.p;
    rest /= tp.p;
    if (digit != 0) {
      // Keep only terms that can survive the twist: e * p^i < q.
      const std::uint64_t threshold = (tp.q + scale - 1) / scale;
      SparsePoly kept(tp.n, tp.p);
      for (const auto& [e, c] : f.terms()) {
        bool keep = true;
        for (unsigned v = 0; v < tp.n; ++v) {
          if (e[v] >= threshold) {
            keep = false;
            break;
          }
        }
        if (keep) kept.add_term(e, c);
      }
      SparsePoly twisted(tp.n, tp.p);
      for (const auto& [e, c] : kept.terms()) {
        twisted.add_term(e.scaled(scale), c);
      }
      twisted = truncate(twisted, tp);
      result = mul_truncated(result, detail::pow_truncated(twisted, digit, tp),
                             tp);
      if (result.is_zero()) return result;
    }
    if (rest > 0) {
      if (scale >= tp.q ||
          scale > std::numeric_limits<std::uint64_t>::max() / tp.p) {
        // Every remaining digit j has p^j >= q, so Frob^j(f) reduces to the
        // constant term c0 and contributes c0^(digit sum of the rest).
        const auto it = f.terms().find(ExponentVec(tp.n));
        const std::uint64_t c0 = it == f.terms().end() ? 0 : it->second;
        if (c0 == 0) return SparsePoly(tp.n, tp.p);
        std::uint64_t digit_sum = 0;
        for (std::uint64_t r = rest; r > 0; r /= tp.p) digit_sum += r % tp.p;
        const PrimeField fld(tp.p);
        return mul_truncated(
            result, SparsePoly::constant(tp.n, tp.p, fld.pow(c0, digit_sum)),
            tp);
      }
      scale *= tp.p;
    }
  }
  return result;
}

}  // namespace fsig
