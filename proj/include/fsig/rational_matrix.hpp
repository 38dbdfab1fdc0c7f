#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "fsig/rational.hpp"

namespace fsig {

// Dense matrix over Q, row-major. Small: used for p-fractal rank probes and
// polytope facet computations, not for quotient-ring linear algebra.
class RationalMatrix {
 public:
  RationalMatrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols) {}

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Rational& at(std::size_t r, std::size_t c) {
    check(r, c);
    return data_[r * cols_ + c];
  }
  const Rational& at(std::size_t r, std::size_t c) const {
    check(r, c);
    return data_[r * cols_ + c];
  }

 private:
  void check(std::size_t r, std::size_t c) const {
    if (r >= rows_ || c >= cols_) {
      throw std::out_of_range("rational matrix index out of range");
    }
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<Rational> data_;
};

namespace detail {

// In-place reduced row echelon form; returns the pivot columns.
inline std::vector<std::size_t> rref(RationalMatrix& m) {
  std::vector<std::size_t> pivots;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m.at(pivot, col) == 0) ++pivot;
    if (pivot == m.rows()) continue;
    if (pivot != row) {
      for (std::size_t j = col; j < m.cols(); ++j) {
        std::swap(m.at(pivot, j), m.at(row, j));
      }
    }
    const Rational inv = Rational(1) / m.at(row, col);
    for (std::size_t j = col; j < m.cols(); ++j) m.at(row, j) *= inv;
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m.at(r, col) == 0) continue;
      const Rational factor = m.at(r, col);
      for (std::size_t j = col; j < m.cols(); ++j) {
        m.at(r, j) -= factor * m.at(row, j);
      }
    }
    pivots.push_back(col);
    ++row;
  }
  return pivots;
}

// Basis of the right null space of m (solutions of m x = 0).
inline std::vector<std::vector<Rational>> rational_nullspace(
    RationalMatrix m) {
  const std::vector<std::size_t> pivots = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t c : pivots) is_pivot[c] = true;

  std::vector<std::vector<Rational>> basis;
  for (std::size_t free_col = 0; free_col < m.cols(); ++free_col) {
    if (is_pivot[free_col]) continue;
    std::vector<Rational> v(m.cols(), Rational(0));
    v[free_col] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) {
      v[pivots[i]] = -m.at(i, free_col);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

}  // namespace detail

// Exact rank over Q.
inline std::size_t rational_rank(RationalMatrix m) {
  return detail::rref(m).size();
}

}  // namespace fsig
