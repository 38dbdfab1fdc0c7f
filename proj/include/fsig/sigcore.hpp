#pragma once

#include <array>
#include <atomic>
#include <cstdint>
#include <functional>
#include <mutex>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "fsig/errors.hpp"
#include "fsig/padic.hpp"
#include "fsig/poly.hpp"
#include "fsig/rational.hpp"
#include "fsig/sparse_matrix_fp.hpp"

namespace fsig {

// Length of a cyclic module R/I together with the bracket it was computed in.
struct LengthResult {
  BigInt length;
  std::uint64_t q = 1;
  unsigned n = 1;
};

// Matrix of multiplication by g on the monomial basis of R / m^[q], column
// indexed by source monomial, row by target. Basis order is lexicographic via
// idx(v) = ((v_1 q + v_2) q + ...) q + v_n. Requires g already truncated.
inline SparseMatrixFp mult_matrix(const SparsePoly& g,
                                  const TruncationParams& tp) {
  if (g.nvars() != tp.n || g.modulus() != tp.p) {
    throw std::invalid_argument("polynomial does not match truncation ring");
  }
  const std::uint64_t dim = tp.basis_size_checked();
  const std::uint32_t dim32 = static_cast<std::uint32_t>(dim);

  struct Term {
    std::uint64_t offset;                    // contribution to the basis index
    std::array<std::uint32_t, kMaxVars> limit;  // max source exponent per var
    std::uint32_t coeff;
  };
  std::vector<Term> terms;
  terms.reserve(g.term_count());
  for (const auto& [e, c] : g.terms()) {
    Term t{};
    std::uint64_t off = 0;
    bool representable = true;
    for (unsigned i = 0; i < tp.n; ++i) {
      if (e[i] >= tp.q) {
        representable = false;  // the term is zero in R / m^[q]
        break;
      }
      off = off * tp.q + e[i];
      t.limit[i] = static_cast<std::uint32_t>(tp.q - 1 - e[i]);
    }
    if (!representable) {
      throw std::invalid_argument("polynomial is not truncated to the bracket");
    }
    t.offset = off;
    t.coeff = static_cast<std::uint32_t>(c);
    terms.push_back(t);
  }

  SparseMatrixFp m(dim32, dim32, tp.p);
  m.reserve(terms.size() * static_cast<std::size_t>(dim) / 2);
  std::array<std::uint32_t, kMaxVars> v{};
  for (std::uint64_t col = 0; col < dim; ++col) {
    for (const Term& t : terms) {
      bool fits = true;
      for (unsigned i = 0; i < tp.n; ++i) {
        if (v[i] > t.limit[i]) {
          fits = false;
          break;
        }
      }
      if (fits) {
        m.add(static_cast<std::uint32_t>(col + t.offset),
              static_cast<std::uint32_t>(col), t.coeff);
      }
    }
    // Odometer over the mixed-radix representation of the basis index.
    for (unsigned i = tp.n; i-- > 0;) {
      if (++v[i] < tp.q) break;
      v[i] = 0;
    }
  }
  return m;
}

namespace detail {

inline void validate_pair_element(const SparsePoly& f,
                                  const TruncationParams& tp) {
  if (f.nvars() != tp.n || f.modulus() != tp.p) {
    throw std::invalid_argument("polynomial does not match truncation ring");
  }
  if (f.is_zero()) {
    throw std::invalid_argument("pair element must be nonzero");
  }
  if (f.has_constant_term()) {
    throw unit_element_error(
        "pair element is a unit: it must lie in (x_1, ..., x_n)");
  }
}

}  // namespace detail

// ell(R / (m^[q] : f^a)): the rank of multiplication by f^a on R / m^[q].
// Requires nonzero f in the maximal ideal.
inline LengthResult colon_length(const SparsePoly& f, std::uint64_t a,
                                 const TruncationParams& tp) {
  detail::validate_pair_element(f, tp);
  if (a == 0) return LengthResult{tp.basis_size(), tp.q, tp.n};
  const SparsePoly g = power_mod(f, a, tp);
  if (g.is_zero()) return LengthResult{BigInt(0), tp.q, tp.n};
  const std::size_t rank = sparse_rank_fp(mult_matrix(g, tp));
  return LengthResult{BigInt(rank), tp.q, tp.n};
}

// ell(R / (m^[q] + (f^a))) = q^n - colon_length by rank-nullity.
inline LengthResult quotient_length(const SparsePoly& f, std::uint64_t a,
                                    const TruncationParams& tp) {
  LengthResult colon = colon_length(f, a, tp);
  return LengthResult{tp.basis_size() - colon.length, tp.q, tp.n};
}

// Resolves a length, either directly or through a memo/cache layer.
using LengthProvider = std::function<BigInt(
    const SparsePoly& f, std::uint64_t a, const TruncationParams& tp)>;

struct TableOptions {
  unsigned jobs = 1;
  std::uint64_t basis_budget = TruncationParams::kDefaultBasisBudget;
  LengthProvider provider;  // empty: compute colon lengths directly
};

// F-signature of the pair (R, f^t) at t = a / p^c, evaluated at the exact
// finite level: s = colon_length(f, a, q = p^c) / q^n.
inline Rational signature_at(const SparsePoly& f, const PadicRational& t,
                             std::uint64_t basis_budget =
                                 TruncationParams::kDefaultBasisBudget) {
  if (t.prime() != f.modulus()) {
    throw std::invalid_argument("parameter prime differs from ring modulus");
  }
  const TruncationParams tp(t.prime(), t.scale(), f.nvars(), basis_budget);
  const LengthResult r = colon_length(f, t.numerator(), tp);
  return Rational(r.length, tp.basis_size());
}

// phi(t) = 1 - s(t): the co-signature, convex and nondecreasing on [0, 1].
inline Rational phi_at(const SparsePoly& f, const PadicRational& t,
                       std::uint64_t basis_budget =
                           TruncationParams::kDefaultBasisBudget) {
  return Rational(1) - signature_at(f, t, basis_budget);
}

// One row of a signature (or slope) table at t = a / p^c.
struct SignatureSample {
  std::uint64_t a = 0;
  Rational t;
  Rational value;
};

// Exact signature values on the full grid {a / p^c : 0 <= a <= t_max p^c} at
// a fixed scale c. Invariants: t strictly increasing, values within [0, 1]
// with denominators dividing p^(c n).
class SignatureTable {
 public:
  SignatureTable(SparsePoly f, std::uint64_t p, std::uint32_t c,
                 std::vector<SignatureSample> samples)
      : f_(std::move(f)), p_(p), c_(c), samples_(std::move(samples)) {
    if (f_.modulus() != p_) {
      throw std::invalid_argument("table prime differs from ring modulus");
    }
    const BigInt scale_len = big_pow(BigInt(p_), c_ * f_.nvars());
    for (std::size_t i = 0; i < samples_.size(); ++i) {
      const SignatureSample& s = samples_[i];
      if (i > 0 && !(samples_[i - 1].t < s.t)) {
        throw std::invalid_argument("table parameters must strictly increase");
      }
      if (s.value < 0 || s.value > 1) {
        throw std::invalid_argument("table value outside [0, 1]");
      }
      if (scale_len % denominator(s.value) != 0) {
        throw std::invalid_argument("table value denominator off the grid");
      }
    }
  }

  const SparsePoly& f() const noexcept { return f_; }
  std::uint64_t prime() const noexcept { return p_; }
  std::uint32_t scale() const noexcept { return c_; }
  unsigned nvars() const noexcept { return f_.nvars(); }
  const std::vector<SignatureSample>& samples() const noexcept {
    return samples_;
  }

 private:
  SparsePoly f_;
  std::uint64_t p_;
  std::uint32_t c_;
  std::vector<SignatureSample> samples_;
};

// Sweeps a = t_max p^c down to 0 at fixed scale c. With jobs > 1 the
// a-values are distributed over worker threads; results are exact rationals,
// so the assembled table does not depend on scheduling.
inline SignatureTable signature_table(const SparsePoly& f, std::uint64_t p,
                                      std::uint32_t c, const Rational& t_max,
                                      const TableOptions& options = {}) {
  if (f.modulus() != p) {
    throw std::invalid_argument("table prime differs from ring modulus");
  }
  if (t_max < 0) throw std::invalid_argument("t_max must be nonnegative");
  const BigInt qc = big_pow(BigInt(p), c);
  const Rational a_max_rat = t_max * Rational(qc);
  if (denominator(a_max_rat) != 1) {
    throw std::invalid_argument("t_max is not a grid point at scale c");
  }
  const BigInt a_max_big = numerator(a_max_rat);
  if (a_max_big > BigInt(UINT32_MAX)) {
    throw capacity_error("grid has too many points");
  }
  const std::uint64_t a_max = static_cast<std::uint64_t>(a_max_big);

  const TruncationParams tp(p, c, f.nvars(), options.basis_budget);
  tp.basis_size_checked();  // fail fast before sweeping
  const BigInt denom = tp.basis_size();

  LengthProvider provider = options.provider;
  if (!provider) {
    provider = [](const SparsePoly& g, std::uint64_t a,
                  const TruncationParams& t) {
      return colon_length(g, a, t).length;
    };
  }

  std::vector<BigInt> lengths(a_max + 1);
  const unsigned jobs = std::max(1u, options.jobs);
  if (jobs == 1 || a_max == 0) {
    for (std::uint64_t k = 0; k <= a_max; ++k) {
      const std::uint64_t a = a_max - k;  // descending sweep
      lengths[a] = provider(f, a, tp);
    }
  } else {
    std::atomic<std::uint64_t> next{0};
    std::exception_ptr first_error;
    std::mutex error_mu;
    auto work = [&]() {
      while (true) {
        const std::uint64_t k = next.fetch_add(1);
        if (k > a_max) return;
        const std::uint64_t a = a_max - k;
        try {
          lengths[a] = provider(f, a, tp);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mu);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < jobs; ++i) pool.emplace_back(work);
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  std::vector<SignatureSample> samples;
  samples.reserve(a_max + 1);
  for (std::uint64_t a = 0; a <= a_max; ++a) {
    samples.push_back(SignatureSample{a, Rational(BigInt(a), qc),
                                      Rational(lengths[a], denom)});
  }
  return SignatureTable(f, p, c, std::move(samples));
}

// Forward difference quotients (t_i, (s_{i+1} - s_i) / (t_{i+1} - t_i)).
inline std::vector<SignatureSample> derivative_table(
    const SignatureTable& table) {
  const auto& samples = table.samples();
  if (samples.size() < 2) {
    throw std::invalid_argument("table too small for difference quotients");
  }
  std::vector<SignatureSample> out;
  out.reserve(samples.size() - 1);
  for (std::size_t i = 0; i + 1 < samples.size(); ++i) {
    const Rational slope = (samples[i + 1].value - samples[i].value) /
                           (samples[i + 1].t - samples[i].t);
    out.push_back(SignatureSample{samples[i].a, samples[i].t, slope});
  }
  return out;
}

// Normalized Hilbert-Kunz colengths ell(R / (m^[p^e] + (f))) / p^(e (n - 1))
// for e = 1..e_max. Converges to the Hilbert-Kunz multiplicity of R / (f).
inline std::vector<Rational> hk_sequence(const SparsePoly& f, unsigned e_max,
                                         std::uint64_t basis_budget =
                                             TruncationParams::kDefaultBasisBudget) {
  std::vector<Rational> out;
  out.reserve(e_max);
  for (unsigned e = 1; e <= e_max; ++e) {
    const TruncationParams tp(f.modulus(), e, f.nvars(), basis_budget);
    const LengthResult r = quotient_length(f, 1, tp);
    out.push_back(Rational(r.length, big_pow(BigInt(f.modulus()),
                                             e * (f.nvars() - 1))));
  }
  return out;
}

// Normalized colon lengths at a = p^e - 1: converges to the F-signature of
// R / (f) by the adjunction identity at t -> 1.
inline std::vector<Rational> quotient_signature_sequence(
    const SparsePoly& f, unsigned e_max,
    std::uint64_t basis_budget = TruncationParams::kDefaultBasisBudget) {
  std::vector<Rational> out;
  out.reserve(e_max);
  for (unsigned e = 1; e <= e_max; ++e) {
    const TruncationParams tp(f.modulus(), e, f.nvars(), basis_budget);
    const std::uint64_t a = tp.q - 1;
    const LengthResult r = colon_length(f, a, tp);
    out.push_back(Rational(r.length, big_pow(BigInt(f.modulus()),
                                             e * (f.nvars() - 1))));
  }
  return out;
}

}  // namespace fsig
