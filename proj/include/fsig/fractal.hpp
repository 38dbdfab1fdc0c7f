#pragma once

#include <cstdint>
#include <set>
#include <stdexcept>
#include <vector>

#include "fsig/rational.hpp"
#include "fsig/rational_matrix.hpp"
#include "fsig/sigcore.hpp"

namespace fsig {

// Rational a / 3^c on the triadic grid.
struct TriadicRational {
  std::uint64_t a = 0;
  std::uint32_t c = 0;

  Rational value() const { return Rational(BigInt(a), big_pow(BigInt(3), c)); }
};

// Monsky's auxiliary function on [0, 1], defined by the self-similar system
//   delta(t) = 6 t - 3                 for t in [2/3, 1],
//   delta(t) = delta(1 - 3 t) / 3      for t in [0, 1/3],
//   delta(t) = delta(3 t - 1) / 3      for t in [1/3, 2/3].
// Triadic arguments reach the closed-form branch in finitely many steps.
// Other rationals may cycle; a cycle forces the value to zero because each
// step contributes a factor 1/3 (t = 1/2, the fixed point, is the prototype).
inline Rational delta_eval(const Rational& t) {
  if (t < 0 || t > 1) {
    throw std::invalid_argument("delta is defined on [0, 1]");
  }
  const Rational two_thirds(2, 3);
  const Rational one_third(1, 3);
  Rational cur = t;
  unsigned depth = 0;
  std::set<Rational> visited;
  while (cur < two_thirds) {
    if (!visited.insert(cur).second) return Rational(0);
    if (cur <= one_third) {
      cur = Rational(1) - 3 * cur;
    } else {
      cur = 3 * cur - 1;
    }
    ++depth;
  }
  return (6 * cur - 3) / big_pow(BigInt(3), depth);
}

inline Rational delta_eval(const TriadicRational& t) {
  return delta_eval(t.value());
}

// Exact F-signature of the pair (F_3[[x, y]], f^t) for the Monsky quartic
// f = y^3 - x^4 + x^2 y^2:  s(t) = (9 - 36 t + 36 t^2 - delta(t)^2) / 8.
inline Rational monsky_closed_form(const Rational& t) {
  if (t < 0 || t > 1) {
    throw std::invalid_argument("closed form is defined on [0, 1]");
  }
  const Rational d = delta_eval(t);
  return (Rational(9) - 36 * t + 36 * t * t - d * d) / 8;
}

// Dimension probe for the p-fractal structure of phi(t) = 1 - s(t): the rank
// of the sample matrix whose rows are the rescaled windows
//   t -> phi((t + b) / p^e),  0 <= e <= window_scale,  0 <= b < p^e,
// all sampled on the common grid t = j / p^(sample_scale - window_scale).
// A bounded rank as window_scale grows witnesses finite-dimensional span.
inline std::size_t fractal_dim_probe(const SparsePoly& f,
                                     std::uint32_t window_scale,
                                     std::uint32_t sample_scale,
                                     const TableOptions& options = {}) {
  if (window_scale > sample_scale) {
    throw std::invalid_argument("window scale exceeds sample scale");
  }
  const std::uint64_t p = f.modulus();
  const SignatureTable table =
      signature_table(f, p, sample_scale, Rational(1), options);
  const auto& samples = table.samples();

  const std::uint64_t cols =
      pow_u64_checked(p, sample_scale - window_scale) + 1;
  std::size_t rows = 0;
  for (std::uint32_t e = 0; e <= window_scale; ++e) {
    rows += static_cast<std::size_t>(pow_u64_checked(p, e));
  }

  RationalMatrix m(rows, static_cast<std::size_t>(cols));
  std::size_t r = 0;
  for (std::uint32_t e = 0; e <= window_scale; ++e) {
    const std::uint64_t stretch = pow_u64_checked(p, window_scale - e);
    const std::uint64_t offset_unit = pow_u64_checked(p, sample_scale - e);
    for (std::uint64_t b = 0; b < pow_u64_checked(p, e); ++b, ++r) {
      for (std::uint64_t j = 0; j < cols; ++j) {
        // phi((j / p^(s-w) + b) / p^e) on the scale-s grid.
        const std::uint64_t index = j * stretch + b * offset_unit;
        m.at(r, static_cast<std::size_t>(j)) =
            Rational(1) - samples[static_cast<std::size_t>(index)].value;
      }
    }
  }
  return rational_rank(std::move(m));
}

}  // namespace fsig
