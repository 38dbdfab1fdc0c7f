#include <atomic>
#include <random>

#include <catch2/catch_amalgamated.hpp>

#include "fsig/parse.hpp"
#include "fsig/sigcore.hpp"
#include "oracles.hpp"

using namespace fsig;

namespace {

SparsePoly random_pair_element(std::mt19937_64& rng, unsigned n,
                               std::uint64_t p, std::uint32_t max_exp,
                               unsigned max_terms) {
  while (true) {
    SparsePoly f(n, p);
    const unsigned terms = 1 + rng() % max_terms;
    for (unsigned t = 0; t < terms; ++t) {
      ExponentVec e(n);
      std::uint64_t degree = 0;
      for (unsigned i = 0; i < n; ++i) {
        const std::uint32_t v = static_cast<std::uint32_t>(rng() % (max_exp + 1));
        e.set(i, v);
        degree += v;
      }
      if (degree == 0) continue;
      f.add_term(e, 1 + rng() % (p - 1));
    }
    if (!f.is_zero()) return f;
  }
}

}  // namespace

TEST_CASE("multiplication matrix of a single variable at q = 2") {
  // On F_2[x]/(x^2), multiplication by x maps 1 -> x and x -> 0.
  const TruncationParams tp(2, 1, 1);
  const SparsePoly x = parse_poly("x", 1, 2);
  const SparseMatrixFp m = mult_matrix(x, tp);
  REQUIRE(m.rows() == 2);
  REQUIRE(m.entries().size() == 1);
  REQUIRE(m.entries()[0].row == 1);
  REQUIRE(m.entries()[0].col == 0);
  REQUIRE(sparse_rank_fp(m) == 1);
}

TEST_CASE("multiplication matrix requires truncated input") {
  const TruncationParams tp(2, 1, 1);
  REQUIRE_THROWS_AS(mult_matrix(parse_poly("x^2", 1, 2), tp),
                    std::invalid_argument);
}

TEST_CASE("colon and quotient lengths for a coordinate power") {
  // (m^[5] : x^2) on F_5[x,y]: multiplication by x^2 kills x^i y^j iff
  // i >= 3, so the rank is 3 * 5 = 15 and the quotient length is 10.
  const TruncationParams tp(5, 1, 2);
  const SparsePoly x = parse_poly("x", 2, 5);
  REQUIRE(colon_length(x, 2, tp).length == 15);
  REQUIRE(quotient_length(x, 2, tp).length == 10);
  // a = 0: the colon ideal is all of m^[q].
  REQUIRE(colon_length(x, 0, tp).length == 25);
  // f^a == 0 in the bracket: colon length collapses to zero.
  REQUIRE(colon_length(x, 5, tp).length == 0);
}

TEST_CASE("pair element validation") {
  const TruncationParams tp(5, 1, 2);
  REQUIRE_THROWS_AS(colon_length(SparsePoly(2, 5), 1, tp),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(colon_length(parse_poly("1+x", 2, 5), 1, tp),
                    unit_element_error);
  REQUIRE_THROWS_AS(colon_length(parse_poly("x", 2, 3), 1, tp),
                    std::invalid_argument);  // wrong modulus
}

TEST_CASE("signature of a coordinate hyperplane is 1 - t") {
  const SparsePoly x = parse_poly("x", 2, 5);
  for (std::uint64_t a = 0; a <= 25; ++a) {
    const PadicRational t(5, a, 2);
    REQUIRE(signature_at(x, t) == Rational(1) - Rational(a, 25));
  }
  REQUIRE_THROWS_AS(signature_at(x, PadicRational(3, 1, 1)),
                    std::invalid_argument);
}

TEST_CASE("co-signature complements the signature") {
  const SparsePoly f = parse_poly("x*y", 2, 3);
  const PadicRational t(3, 2, 1);
  REQUIRE(phi_at(f, t) == Rational(1) - signature_at(f, t));
}

TEST_CASE("signature value is independent of the grid representation") {
  // colon(f, p a, p^(c+1)) == p^n colon(f, a, p^c): the flat bracket scaling
  // that makes s well defined on the p-adic rationals.
  std::mt19937_64 rng(31337);
  const std::uint64_t primes[] = {2, 3, 5};
  for (int trial = 0; trial < 12; ++trial) {
    const std::uint64_t p = primes[trial % 3];
    const unsigned n = 1 + rng() % 2;
    const TruncationParams coarse(p, 1, n);
    const TruncationParams fine(p, 2, n);
    const SparsePoly f = random_pair_element(
        rng, n, p, static_cast<std::uint32_t>(coarse.q), 3);
    const std::uint64_t a = rng() % (coarse.q + 1);
    CAPTURE(trial, p, n, a, f.to_string());
    REQUIRE(colon_length(f, a * p, fine).length ==
            big_pow(BigInt(p), n) * colon_length(f, a, coarse).length);
  }
}

TEST_CASE("signature of a product of distinct variables is (1 - t)^n") {
  const SparsePoly f = parse_poly("x*y", 2, 3);
  for (std::uint64_t a = 0; a <= 9; ++a) {
    const PadicRational t(3, a, 2);
    const Rational expected =
        (Rational(1) - Rational(a, 9)) * (Rational(1) - Rational(a, 9));
    REQUIRE(signature_at(f, t) == expected);
  }
}

TEST_CASE("signature vanishes at parameters of one and beyond") {
  // For a >= q every term of f^a = f^q * f^(a-q) lies in the Frobenius
  // power of the maximal ideal (f^q scales each exponent vector by q), so
  // the multiplication map is zero and s(t) = 0 on the grid for t >= 1.
  REQUIRE(signature_at(parse_poly("x", 1, 3), PadicRational(3, 3, 1)) == 0);
  REQUIRE(signature_at(parse_poly("x", 1, 3), PadicRational(3, 4, 1)) == 0);
  REQUIRE(signature_at(parse_poly("x+y", 2, 2), PadicRational(2, 5, 2)) == 0);
  REQUIRE(signature_at(parse_poly("x^3+y^2", 2, 5), PadicRational(5, 6, 1)) ==
          0);
  REQUIRE(signature_at(parse_poly("x*y", 2, 3), PadicRational(3, 10, 2)) == 0);
}

TEST_CASE("signature tables sweep the full grid") {
  const SparsePoly f = parse_poly("x", 2, 5);
  const SignatureTable table = signature_table(f, 5, 1, Rational(1));
  REQUIRE(table.samples().size() == 6);
  REQUIRE(table.samples().front().value == 1);
  REQUIRE(table.samples().back().value == 0);
  REQUIRE(table.samples()[2].t == Rational(2, 5));
  REQUIRE(table.prime() == 5);
  REQUIRE(table.scale() == 1);

  const auto slopes = derivative_table(table);
  REQUIRE(slopes.size() == 5);
  for (const auto& s : slopes) {
    REQUIRE(s.value == -1);
  }
}

TEST_CASE("table sweep covers partial ranges and rejects off-grid bounds") {
  const SparsePoly f = parse_poly("x", 2, 5);
  const SignatureTable half = signature_table(f, 5, 1, Rational(3, 5));
  REQUIRE(half.samples().size() == 4);
  REQUIRE_THROWS_AS(signature_table(f, 5, 1, Rational(1, 2)),
                    std::invalid_argument);
  REQUIRE_THROWS_AS(signature_table(f, 5, 1, Rational(-1)),
                    std::invalid_argument);
}

TEST_CASE("threaded sweeps agree with the sequential sweep") {
  const SparsePoly f = parse_poly("x^3+y^2", 2, 3);
  const SignatureTable seq = signature_table(f, 3, 2, Rational(1));
  TableOptions opt;
  opt.jobs = 4;
  const SignatureTable par = signature_table(f, 3, 2, Rational(1), opt);
  REQUIRE(seq.samples().size() == par.samples().size());
  for (std::size_t i = 0; i < seq.samples().size(); ++i) {
    REQUIRE(seq.samples()[i].a == par.samples()[i].a);
    REQUIRE(seq.samples()[i].t == par.samples()[i].t);
    REQUIRE(seq.samples()[i].value == par.samples()[i].value);
  }
}

TEST_CASE("custom length providers are consulted for every grid point") {
  const SparsePoly f = parse_poly("x", 1, 3);
  std::atomic<int> calls{0};
  TableOptions opt;
  opt.provider = [&calls](const SparsePoly& g, std::uint64_t a,
                          const TruncationParams& tp) {
    ++calls;
    return colon_length(g, a, tp).length;
  };
  const SignatureTable table = signature_table(f, 3, 1, Rational(1), opt);
  REQUIRE(calls.load() == 4);
  REQUIRE(table.samples().size() == 4);
}

TEST_CASE("table construction validates its invariants") {
  const SparsePoly f = parse_poly("x", 1, 2);
  std::vector<SignatureSample> bad_order{
      {0, Rational(1, 2), Rational(1, 2)},
      {1, Rational(0), Rational(1)},
  };
  REQUIRE_THROWS_AS(SignatureTable(f, 2, 1, bad_order), std::invalid_argument);

  std::vector<SignatureSample> bad_value{{0, Rational(0), Rational(2)}};
  REQUIRE_THROWS_AS(SignatureTable(f, 2, 1, bad_value), std::invalid_argument);

  std::vector<SignatureSample> off_grid{{0, Rational(0), Rational(1, 3)}};
  REQUIRE_THROWS_AS(SignatureTable(f, 2, 1, off_grid), std::invalid_argument);
}

TEST_CASE("derivative tables need at least two samples") {
  const SparsePoly f = parse_poly("x", 1, 2);
  const SignatureTable tiny(f, 2, 1, {{0, Rational(0), Rational(1)}});
  REQUIRE_THROWS_AS(derivative_table(tiny), std::invalid_argument);
}

TEST_CASE("basis budget failures surface as capacity errors") {
  const SparsePoly f = parse_poly("x*y", 2, 5);
  REQUIRE_THROWS_AS(signature_at(f, PadicRational(5, 1, 4), 1000),
                    capacity_error);
  TableOptions opt;
  opt.basis_budget = 1000;
  REQUIRE_THROWS_AS(signature_table(f, 5, 4, Rational(1), opt),
                    capacity_error);
}

TEST_CASE("normalized quotient colengths of the node") {
  // f = xy: ell(R/(m^[q] + f)) = q^2 - (q-1)^2 = 2q - 1, so the normalized
  // sequence is (2q - 1) / q -> 2, the multiplicity of the node.
  const SparsePoly f = parse_poly("x*y", 2, 2);
  const auto hk = hk_sequence(f, 3);
  REQUIRE(hk.size() == 3);
  REQUIRE(hk[0] == Rational(3, 2));
  REQUIRE(hk[1] == Rational(7, 4));
  REQUIRE(hk[2] == Rational(15, 8));

  // Colon lengths at a = q - 1: ell = (q - (q-1))^2 = 1, normalized 1/q.
  const auto qs = quotient_signature_sequence(f, 3);
  REQUIRE(qs.size() == 3);
  REQUIRE(qs[0] == Rational(1, 2));
  REQUIRE(qs[1] == Rational(1, 4));
  REQUIRE(qs[2] == Rational(1, 8));
}

TEST_CASE("hyperplane sequences are constant") {
  // R/(x) is regular: Hilbert-Kunz multiplicity and signature are both 1.
  const SparsePoly f = parse_poly("x", 2, 3);
  for (const Rational& v : hk_sequence(f, 3)) REQUIRE(v == 1);
  for (const Rational& v : quotient_signature_sequence(f, 3)) REQUIRE(v == 1);
}

TEST_CASE("random instances satisfy rank-nullity against the dense oracle") {
  std::mt19937_64 rng(0xabcdef);
  const std::uint64_t primes[] = {2, 3, 5, 7};
  for (int trial = 0; trial < 25; ++trial) {
    const std::uint64_t p = primes[rng() % 4];
    const unsigned n = 1 + rng() % 2;
    const std::uint32_t c = 1;
    const TruncationParams tp(p, c, n);
    const SparsePoly f = random_pair_element(
        rng, n, p, static_cast<std::uint32_t>(tp.q), 3);
    const std::uint64_t a = rng() % (tp.q + 2);
    CAPTURE(trial, p, n, a, f.to_string());

    const BigInt colon = colon_length(f, a, tp).length;
    const BigInt quotient = quotient_length(f, a, tp).length;
    REQUIRE(colon + quotient == tp.basis_size());

    const SparsePoly g = power_mod(f, a, tp);
    const BigInt oracle_rank =
        (a == 0) ? tp.basis_size()
                 : (g.is_zero()
                        ? BigInt(0)
                        : BigInt(oracles::dense_rank_oracle(mult_matrix(g, tp))));
    REQUIRE(colon == oracle_rank);
  }
}
