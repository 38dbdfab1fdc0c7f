// Ad-hoc benchmark for the elimination engine on representative workloads.
#include <chrono>
#include <iostream>

#include "fsig/fsig.hpp"

using namespace fsig;
using Clock = std::chrono::steady_clock;

static double ms_since(Clock::time_point t0) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t0).count();
}

int main(int argc, char** argv) {
  const int mode = argc > 1 ? std::atoi(argv[1]) : 0;

  if (mode == 0 || mode == 1) {
    // Cusp x^3 + y^2 over F_5 at scale c = 3 (dim 15625), selected a values.
    const SparsePoly f = parse_poly("x^3+y^2", 2, 5);
    const TruncationParams tp(5, 3, 2);
    for (std::uint64_t a : {5, 15, 25, 40, 50, 62, 75, 90, 110}) {
      const auto t0 = Clock::now();
      const SparsePoly g = power_mod(f, a, tp);
      const double t_pow = ms_since(t0);
      if (g.is_zero()) {
        std::cout << "cusp a=" << a << " zero power " << t_pow << "ms\n";
        continue;
      }
      const auto t1 = Clock::now();
      const SparseMatrixFp m = mult_matrix(g, tp);
      const double t_mat = ms_since(t1);
      const auto t2 = Clock::now();
      const std::size_t r = sparse_rank_fp(m);
      const double t_rank = ms_since(t2);
      std::cout << "cusp a=" << a << " |g|=" << g.term_count()
                << " nnz=" << m.entries().size() << " rank=" << r
                << "  pow=" << t_pow << "ms mat=" << t_mat
                << "ms rank=" << t_rank << "ms\n";
    }
  }

  if (mode == 0 || mode == 2) {
    // Monsky quartic over F_3 at scale c = 4 (dim 6561).
    const SparsePoly f = parse_poly("y^3-x^4+x^2*y^2", 2, 3);
    const TruncationParams tp(3, 4, 2);
    for (std::uint64_t a : {10, 20, 27, 40, 54, 60, 70, 80}) {
      const auto t0 = Clock::now();
      const SparsePoly g = power_mod(f, a, tp);
      const double t_pow = ms_since(t0);
      if (g.is_zero()) {
        std::cout << "monsky a=" << a << " zero power " << t_pow << "ms\n";
        continue;
      }
      const auto t1 = Clock::now();
      const SparseMatrixFp m = mult_matrix(g, tp);
      const double t_mat = ms_since(t1);
      const auto t2 = Clock::now();
      const std::size_t r = sparse_rank_fp(m);
      const double t_rank = ms_since(t2);
      std::cout << "monsky a=" << a << " |g|=" << g.term_count()
                << " nnz=" << m.entries().size() << " rank=" << r
                << "  pow=" << t_pow << "ms mat=" << t_mat
                << "ms rank=" << t_rank << "ms\n";
    }
  }

  if (mode == 3) {
    // Full cusp sweep at c = 3 to estimate the table runtime.
    const SparsePoly f = parse_poly("x^3+y^2", 2, 5);
    const auto t0 = Clock::now();
    const SignatureTable table = signature_table(f, 5, 3, Rational(1));
    std::cout << "cusp full table: " << table.samples().size() << " rows in "
              << ms_since(t0) / 1000.0 << "s\n";
  }
  return 0;
}
