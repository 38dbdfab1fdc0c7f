#include <algorithm>
#include <random>
#include <set>
#include <vector>

#include <catch2/catch_amalgamated.hpp>

#include "fsig/prime_field.hpp"
#include "fsig/rational.hpp"
#include "fsig/rational_matrix.hpp"
#include "fsig/sparse_matrix_fp.hpp"
#include "oracles.hpp"

using namespace fsig;

TEST_CASE("primality test agrees with trial division") {
  auto brute = [](std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d) {
      if (n % d == 0) return false;
    }
    return true;
  };
  for (std::uint64_t n = 0; n < 300; ++n) {
    CAPTURE(n);
    REQUIRE(is_prime_u64(n) == brute(n));
  }
  REQUIRE(is_prime_u64(2147483647));  // 2^31 - 1
  REQUIRE_FALSE(is_prime_u64(2147483645));
}

TEST_CASE("prime field arithmetic matches direct modular arithmetic") {
  for (std::uint64_t p : {2ull, 3ull, 5ull, 13ull, 101ull}) {
    PrimeField field(p);
    for (std::uint64_t a = 0; a < p; ++a) {
      for (std::uint64_t b = 0; b < p; ++b) {
        REQUIRE(field.add(a, b) == (a + b) % p);
        REQUIRE(field.sub(a, b) == (a + p - b) % p);
        REQUIRE(field.mul(a, b) == (a * b) % p);
      }
      REQUIRE(field.neg(a) == (p - a) % p);
      if (a != 0) {
        REQUIRE(field.mul(a, field.inv(a)) == 1);
      }
    }
    REQUIRE_THROWS_AS(field.inv(0), std::domain_error);
  }
}

TEST_CASE("prime field exponentiation") {
  PrimeField field(7);
  REQUIRE(field.pow(3, 0) == 1);
  REQUIRE(field.pow(3, 1) == 3);
  REQUIRE(field.pow(3, 6) == 1);  // Fermat
  REQUIRE(field.pow(0, 5) == 0);
  REQUIRE(field.pow(2, 100) == 2);  // 100 mod 6 == 4 -> 16 mod 7 == 2
}

TEST_CASE("prime field construction rejects non-primes") {
  REQUIRE_THROWS_AS(PrimeField(0), std::invalid_argument);
  REQUIRE_THROWS_AS(PrimeField(1), std::invalid_argument);
  REQUIRE_THROWS_AS(PrimeField(4), std::invalid_argument);
  REQUIRE_THROWS_AS(PrimeField(std::uint64_t{1} << 32), std::invalid_argument);
  REQUIRE_NOTHROW(PrimeField(2147483647));
}

TEST_CASE("sparse matrix rejects bad entries") {
  SparseMatrixFp m(2, 2, 5);
  REQUIRE_THROWS_AS(m.add(2, 0, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(m.add(0, 2, 1), std::invalid_argument);
  REQUIRE_THROWS_AS(m.add(0, 0, 10), std::invalid_argument);  // 10 mod 5 == 0
  m.add(0, 0, 1);
  m.add(0, 0, 2);  // duplicate detected at rank time
  REQUIRE_THROWS_AS(sparse_rank_fp(m), std::invalid_argument);
}

TEST_CASE("sparse rank on hand-checked matrices") {
  SECTION("empty matrix") {
    SparseMatrixFp m(4, 4, 3);
    REQUIRE(sparse_rank_fp(m) == 0);
  }
  SECTION("identity") {
    SparseMatrixFp m(5, 5, 7);
    for (std::uint32_t i = 0; i < 5; ++i) m.add(i, i, 1);
    REQUIRE(sparse_rank_fp(m) == 5);
  }
  SECTION("rank-one outer product") {
    SparseMatrixFp m(4, 4, 5);
    for (std::uint32_t i = 0; i < 4; ++i) {
      for (std::uint32_t j = 0; j < 4; ++j) m.add(i, j, ((i + 1) * (j + 1)));
    }
    REQUIRE(sparse_rank_fp(m) == 1);
  }
  SECTION("rank drop only in characteristic") {
    // Rows (1,1), (1,1+p): over F_p the second column is 1 everywhere.
    SparseMatrixFp m(2, 2, 3);
    m.add(0, 0, 1);
    m.add(0, 1, 1);
    m.add(1, 0, 1);
    m.add(1, 1, 4);  // 4 mod 3 == 1
    REQUIRE(sparse_rank_fp(m) == 1);
  }
}

namespace {

SparseMatrixFp random_matrix(std::mt19937_64& rng, std::uint32_t rows,
                             std::uint32_t cols, std::uint64_t p,
                             double density) {
  SparseMatrixFp m(rows, cols, p);
  std::uniform_real_distribution<double> coin(0.0, 1.0);
  std::uniform_int_distribution<std::uint64_t> value(1, p - 1);
  for (std::uint32_t i = 0; i < rows; ++i) {
    for (std::uint32_t j = 0; j < cols; ++j) {
      if (coin(rng) < density) m.add(i, j, value(rng));
    }
  }
  return m;
}

}  // namespace

TEST_CASE("sparse rank equals dense oracle on random matrices") {
  std::mt19937_64 rng(0xfeed5eed);
  const std::uint64_t primes[] = {2, 3, 5, 13, 101};
  for (int trial = 0; trial < 60; ++trial) {
    const std::uint32_t rows = 1 + static_cast<std::uint32_t>(rng() % 90);
    const std::uint32_t cols = 1 + static_cast<std::uint32_t>(rng() % 90);
    const std::uint64_t p = primes[rng() % 5];
    const double density = 0.02 + 0.3 * (rng() % 100) / 100.0;
    SparseMatrixFp m = random_matrix(rng, rows, cols, p, density);
    CAPTURE(trial, rows, cols, p, density, m.entries().size());
    REQUIRE(sparse_rank_fp(m) == oracles::dense_rank_oracle(m));
  }
}

TEST_CASE("inverse is an involution on every nonzero element") {
  for (std::uint64_t p : {2ull, 3ull, 5ull, 13ull, 101ull}) {
    PrimeField field(p);
    for (std::uint64_t x = 1; x < p; ++x) {
      REQUIRE(field.inv(field.inv(x)) == x);
    }
  }
}

TEST_CASE("rank is invariant under row and column permutations") {
  std::mt19937_64 rng(0x5eed1234);
  for (int trial = 0; trial < 15; ++trial) {
    const std::uint32_t rows = 2 + static_cast<std::uint32_t>(rng() % 40);
    const std::uint32_t cols = 2 + static_cast<std::uint32_t>(rng() % 40);
    const std::uint64_t p = trial % 2 == 0 ? 3 : 13;
    SparseMatrixFp m = random_matrix(rng, rows, cols, p, 0.15);
    const std::size_t rank = sparse_rank_fp(m);
    REQUIRE(rank <= std::min(rows, cols));

    std::vector<std::uint32_t> rp(rows), cp(cols);
    for (std::uint32_t i = 0; i < rows; ++i) rp[i] = i;
    for (std::uint32_t j = 0; j < cols; ++j) cp[j] = j;
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    SparseMatrixFp permuted(rows, cols, p);
    for (const SparseEntry& e : m.entries()) {
      permuted.add(rp[e.row], cp[e.col], e.value);
    }
    REQUIRE(sparse_rank_fp(permuted) == rank);
  }
}

TEST_CASE("block diagonal rank is the sum of block ranks") {
  std::mt19937_64 rng(0xb10cc);
  for (int trial = 0; trial < 10; ++trial) {
    const std::uint32_t r1 = 1 + static_cast<std::uint32_t>(rng() % 25);
    const std::uint32_t c1 = 1 + static_cast<std::uint32_t>(rng() % 25);
    const std::uint32_t r2 = 1 + static_cast<std::uint32_t>(rng() % 25);
    const std::uint32_t c2 = 1 + static_cast<std::uint32_t>(rng() % 25);
    SparseMatrixFp a = random_matrix(rng, r1, c1, 5, 0.2);
    SparseMatrixFp b = random_matrix(rng, r2, c2, 5, 0.2);
    SparseMatrixFp block(r1 + r2, c1 + c2, 5);
    for (const SparseEntry& e : a.entries()) block.add(e.row, e.col, e.value);
    for (const SparseEntry& e : b.entries()) {
      block.add(r1 + e.row, c1 + e.col, e.value);
    }
    REQUIRE(sparse_rank_fp(block) ==
            sparse_rank_fp(a) + sparse_rank_fp(b));
  }
}

TEST_CASE("sparse rank with forced dense switchover matches oracle") {
  std::mt19937_64 rng(1234);
  SparseMatrixFp m = random_matrix(rng, 100, 100, 2, 0.45);
  RankOptions opt;
  opt.dense_fill_percent = 1;  // go dense almost immediately
  REQUIRE(sparse_rank_fp(m, opt) == oracles::dense_rank_oracle(m));
}

TEST_CASE("sparse rank with dense path disabled matches oracle") {
  std::mt19937_64 rng(99);
  SparseMatrixFp m = random_matrix(rng, 70, 70, 5, 0.2);
  RankOptions opt;
  opt.dense_cap_entries = 0;  // pure sparse elimination all the way down
  REQUIRE(sparse_rank_fp(m, opt) == oracles::dense_rank_oracle(m));
}

TEST_CASE("fill budget aborts with a capacity error") {
  std::mt19937_64 rng(4321);
  SparseMatrixFp m = random_matrix(rng, 48, 48, 3, 0.3);
  RankOptions opt;
  opt.dense_cap_entries = 0;  // never switch dense
  opt.max_fill_entries = 10;
  REQUIRE_THROWS_AS(sparse_rank_fp(m, opt), capacity_error);
}

TEST_CASE("rational matrix rank and nullspace") {
  SECTION("rank of a product matrix") {
    RationalMatrix m(3, 3);
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        m.at(i, j) = Rational(static_cast<int>((i + 1) * (j + 1)));
      }
    }
    REQUIRE(rational_rank(std::move(m)) == 1);
  }
  SECTION("full-rank Hilbert-style matrix") {
    RationalMatrix m(4, 4);
    for (std::size_t i = 0; i < 4; ++i) {
      for (std::size_t j = 0; j < 4; ++j) {
        m.at(i, j) = Rational(1, static_cast<int>(i + j + 1));
      }
    }
    REQUIRE(rational_rank(std::move(m)) == 4);
  }
  SECTION("nullspace of a single equation") {
    RationalMatrix m(1, 2);
    m.at(0, 0) = 2;
    m.at(0, 1) = 3;
    const auto basis = detail::rational_nullspace(std::move(m));
    REQUIRE(basis.size() == 1);
    // 2 x + 3 y == 0 along the basis vector.
    REQUIRE(Rational(2) * basis[0][0] + Rational(3) * basis[0][1] == 0);
  }
  SECTION("nullspace of an invertible matrix is empty") {
    RationalMatrix m(2, 2);
    m.at(0, 0) = 1;
    m.at(1, 1) = 1;
    REQUIRE(detail::rational_nullspace(std::move(m)).empty());
  }
}

TEST_CASE("checked integer power") {
  REQUIRE(pow_u64_checked(2, 10) == 1024);
  REQUIRE(pow_u64_checked(7, 0) == 1);
  REQUIRE(pow_u64_checked(1, 1000) == 1);
  REQUIRE_THROWS_AS(pow_u64_checked(2, 64), std::overflow_error);
  REQUIRE_THROWS_AS(pow_u64_checked(10, 20), std::overflow_error);
}

TEST_CASE("big integer power") {
  REQUIRE(big_pow(BigInt(3), 0) == 1);
  REQUIRE(big_pow(BigInt(3), 5) == 243);
  REQUIRE(big_pow(BigInt(10), 30) == pow10_big(30));
}

TEST_CASE("integer square root") {
  REQUIRE(isqrt_floor(BigInt(0)) == 0);
  REQUIRE(isqrt_floor(BigInt(1)) == 1);
  REQUIRE(isqrt_floor(BigInt(15)) == 3);
  REQUIRE(isqrt_floor(BigInt(16)) == 4);
  const BigInt big = big_pow(BigInt(10), 40) + 12345;
  const BigInt root = isqrt_floor(big);
  REQUIRE(root * root <= big);
  REQUIRE((root + 1) * (root + 1) > big);
}

TEST_CASE("rational square root upper bound") {
  SECTION("exact squares are returned exactly") {
    REQUIRE(sqrt_upper_bound(Rational(4)) == 2);
    REQUIRE(sqrt_upper_bound(Rational(9, 4)) == Rational(3, 2));
    REQUIRE(sqrt_upper_bound(Rational(0)) == 0);
  }
  SECTION("bound is valid and tight at the working scale") {
    const Rational scale(1, 1000000000);
    for (const Rational x : {Rational(2), Rational(1, 3), Rational(5, 7)}) {
      const Rational r = sqrt_upper_bound(x);
      REQUIRE(r * r >= x);
      REQUIRE((r - scale) * (r - scale) < x);
    }
  }
}

TEST_CASE("rational parsing") {
  REQUIRE(parse_rational("3/4") == Rational(3, 4));
  REQUIRE(parse_rational("10") == Rational(10));
  REQUIRE(parse_rational("-2/6") == Rational(-1, 3));
  REQUIRE_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_rational("a/b"), std::invalid_argument);
  REQUIRE_THROWS_AS(parse_rational(""), std::invalid_argument);
}
