#pragma once

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "fsig/newton.hpp"
#include "fsig/padic.hpp"
#include "fsig/rational.hpp"
#include "fsig/sigcore.hpp"

namespace fsig {

// A concrete counterexample to a claimed property.
struct Witness {
  std::string location;
  std::string expected;
  std::string actual;
};

// Outcome of one structural check. `pass` holds iff `witnesses` is empty.
struct PropertyReport {
  std::string property;
  std::string context;
  bool pass = true;
  std::vector<Witness> witnesses;

  void fail(std::string location, std::string expected, std::string actual) {
    pass = false;
    witnesses.push_back(
        Witness{std::move(location), std::move(expected), std::move(actual)});
  }
};

namespace detail {

inline std::string table_context(const SignatureTable& table) {
  std::ostringstream os;
  os << "f = " << table.f().to_string() << ", p = " << table.prime()
     << ", c = " << table.scale() << ", n = " << table.nvars();
  return os.str();
}

inline std::string rational_str(const Rational& v) {
  std::ostringstream os;
  os << v;
  return os.str();
}

}  // namespace detail

// s is nonincreasing along the grid.
inline PropertyReport check_monotone(const SignatureTable& table) {
  PropertyReport report{"monotone", detail::table_context(table)};
  const auto& s = table.samples();
  for (std::size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i + 1].value > s[i].value) {
      report.fail("t in [" + detail::rational_str(s[i].t) + ", " +
                      detail::rational_str(s[i + 1].t) + "]",
                  "s(t) nonincreasing",
                  detail::rational_str(s[i].value) + " -> " +
                      detail::rational_str(s[i + 1].value));
    }
  }
  return report;
}

// s is convex along the grid: difference quotients are nondecreasing.
inline PropertyReport check_convex(const SignatureTable& table) {
  if (table.samples().size() < 3) {
    throw std::invalid_argument("convexity needs at least three samples");
  }
  PropertyReport report{"convex", detail::table_context(table)};
  const auto slopes = derivative_table(table);
  for (std::size_t i = 0; i + 1 < slopes.size(); ++i) {
    if (slopes[i + 1].value < slopes[i].value) {
      report.fail("t in [" + detail::rational_str(slopes[i].t) + ", " +
                      detail::rational_str(slopes[i + 1].t) + "]",
                  "difference quotients nondecreasing",
                  detail::rational_str(slopes[i].value) + " -> " +
                      detail::rational_str(slopes[i + 1].value));
    }
  }
  return report;
}

// The first difference quotient is the steepest, and its magnitude is at
// most the supplied Hilbert-Kunz upper bound (the sharp Lipschitz constant).
inline PropertyReport check_sharp_slope(const SignatureTable& table,
                                        const Rational& hk_upper) {
  PropertyReport report{"sharp-slope", detail::table_context(table)};
  const auto slopes = derivative_table(table);
  const Rational first_mag = boost::multiprecision::abs(slopes.front().value);
  for (const auto& d : slopes) {
    const Rational mag = boost::multiprecision::abs(d.value);
    if (mag > first_mag) {
      report.fail("t = " + detail::rational_str(d.t),
                  "|slope| <= |first slope| = " +
                      detail::rational_str(first_mag),
                  detail::rational_str(mag));
    }
  }
  if (first_mag > hk_upper) {
    report.fail("t = " + detail::rational_str(slopes.front().t),
                "|first slope| <= " + detail::rational_str(hk_upper),
                detail::rational_str(first_mag));
  }
  return report;
}

// At scale e the boundary difference quotients agree exactly with the
// normalized colengths of the quotient ring R/(f): the slope at 0 is minus
// the Hilbert-Kunz term, the slope at 1 is minus the signature term. The two
// sides are computed through independent call paths.
inline PropertyReport check_adjunction_slopes(
    const SparsePoly& f, std::uint32_t e, const TableOptions& options = {}) {
  if (e < 1) throw std::invalid_argument("scale must be at least 1");
  const std::uint64_t p = f.modulus();
  const SignatureTable table =
      signature_table(f, p, e, Rational(1), options);
  PropertyReport report{"adjunction-slopes", detail::table_context(table)};
  const auto slopes = derivative_table(table);

  const Rational hk = hk_sequence(f, e, options.basis_budget).back();
  const Rational qsig =
      quotient_signature_sequence(f, e, options.basis_budget).back();

  if (slopes.front().value != -hk) {
    report.fail("t = 0", "slope == -" + detail::rational_str(hk),
                detail::rational_str(slopes.front().value));
  }
  if (slopes.back().value != -qsig) {
    report.fail("t = 1 - 1/p^e", "slope == -" + detail::rational_str(qsig),
                detail::rational_str(slopes.back().value));
  }
  return report;
}

// Cross-validation of the lattice route against the polynomial route (for a
// principal monomial ideal, exact equality of signatures) or against the
// scaled Newton polytope volume (general case, with the explicit rate bound
// 2 n maxdeg / p^e).
inline PropertyReport check_monomial_cross(
    const MonomialIdeal& ideal, const std::optional<SparsePoly>& f_equiv,
    const PadicRational& t, std::uint32_t e,
    std::uint64_t basis_budget = TruncationParams::kDefaultBasisBudget) {
  const std::uint64_t p = t.prime();
  const unsigned n = ideal.nvars();
  if (e < t.scale()) {
    throw std::invalid_argument("evaluation scale is finer than t");
  }
  PropertyReport report{"monomial-cross", ""};
  {
    std::ostringstream os;
    os << "ideal with " << ideal.generators().size() << " generators, p = "
       << p << ", t = " << t.to_string() << ", e = " << e;
    report.context = os.str();
  }

  const std::uint64_t a = t.numerator() * pow_u64_checked(p, e - t.scale());
  const TruncationParams tp(p, e, n, basis_budget);
  const BigInt count = monomial_colon_length(ideal, a, tp).length;
  const Rational normalized(count, big_pow(BigInt(p), e * n));

  if (ideal.generators().size() == 1) {
    SparsePoly f = f_equiv.has_value()
                       ? *f_equiv
                       : SparsePoly::monomial(n, p, ideal.generators()[0]);
    if (f.term_count() != 1 || f.nvars() != n ||
        !(f.terms().begin()->first == ideal.generators()[0])) {
      throw std::invalid_argument(
          "equivalent polynomial must be the generating monomial");
    }
    const Rational direct = signature_at(f, t, basis_budget);
    if (direct != normalized) {
      report.fail("t = " + t.to_string(),
                  "lattice count equals matrix-rank signature " +
                      detail::rational_str(direct),
                  detail::rational_str(normalized));
    }
    return report;
  }

  const HPolytope poly = newton_facets(ideal);
  const Rational vol = clipped_volume_exact(poly, t.value());
  std::uint64_t maxdeg = 0;
  for (const ExponentVec& g : ideal.generators()) {
    maxdeg = std::max<std::uint64_t>(maxdeg, g.degree());
  }
  const Rational tol =
      Rational(BigInt(2) * n * maxdeg, big_pow(BigInt(p), e));
  const Rational diff = boost::multiprecision::abs(normalized - vol);
  if (diff > tol) {
    report.fail("t = " + t.to_string(),
                "|count/p^(en) - volume| <= " + detail::rational_str(tol) +
                    " with volume = " + detail::rational_str(vol),
                detail::rational_str(diff));
  }
  return report;
}

}  // namespace fsig
