#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "fsig/errors.hpp"
#include "fsig/prime_field.hpp"

namespace fsig {

// One coefficient of a sparse matrix over F_p. Coordinates are 0-based.
struct SparseEntry {
  std::uint32_t row = 0;
  std::uint32_t col = 0;
  std::uint32_t value = 0;  // reduced, nonzero
};

// Coordinate-format sparse matrix over F_p. At most one entry per (row, col);
// stored values are nonzero residues. Duplicates are rejected at rank time
// (building keeps no per-row index, so detection is deferred to the sort).
class SparseMatrixFp {
 public:
  SparseMatrixFp(std::uint32_t nrows, std::uint32_t ncols, std::uint64_t p)
      : nrows_(nrows), ncols_(ncols), field_(p) {}

  std::uint32_t rows() const noexcept { return nrows_; }
  std::uint32_t cols() const noexcept { return ncols_; }
  std::uint64_t modulus() const noexcept { return field_.modulus(); }
  const std::vector<SparseEntry>& entries() const noexcept { return entries_; }

  void reserve(std::size_t n) { entries_.reserve(n); }

  void add(std::uint32_t row, std::uint32_t col, std::uint64_t value) {
    if (row >= nrows_ || col >= ncols_) {
      throw std::invalid_argument("matrix entry out of range");
    }
    const std::uint64_t reduced = field_.reduce(value);
    if (reduced == 0) {
      throw std::invalid_argument("zero coefficient stored in sparse matrix");
    }
    entries_.push_back(
        SparseEntry{row, col, static_cast<std::uint32_t>(reduced)});
  }

 private:
  std::uint32_t nrows_;
  std::uint32_t ncols_;
  PrimeField field_;
  std::vector<SparseEntry> entries_;
};

// Tuning knobs for the elimination engine. Defaults are chosen for quotient
// rings with basis sizes up to a few million.
struct RankOptions {
  // Switch the remaining active submatrix to a dense kernel once fill
  // reaches this percentage (and the submatrix fits dense_cap_entries).
  unsigned dense_fill_percent = 20;
  std::uint64_t dense_cap_entries = std::uint64_t{1} << 26;
  // Hard budget on sparse fill; exceeding it aborts instead of thrashing.
  std::uint64_t max_fill_entries = 150'000'000;
  // Markowitz pivot search scans this many lowest-count candidate columns.
  unsigned candidate_cols = 8;
};

namespace detail {

// Dense row-echelon rank. Uses delayed reduction when row count and modulus
// allow 64-bit accumulation, otherwise reduces after every multiply.
inline std::size_t dense_rank_fp(std::vector<std::uint64_t>& a, std::size_t r_count,
                                 std::size_t c_count, const PrimeField& field) {
  const std::uint64_t p = field.modulus();
  // Lazy accumulation is safe iff (r_count + 1) * (p - 1)^2 < 2^63.
  const std::uint64_t pm1 = p - 1;
  const bool lazy =
      pm1 == 0 ||
      (r_count + 1) <= (std::uint64_t{1} << 63) / (pm1 * pm1 > 0 ? pm1 * pm1 : 1);

  std::size_t rank = 0;
  for (std::size_t col = 0; col < c_count && rank < r_count; ++col) {
    std::size_t pivot_row = r_count;
    for (std::size_t r = rank; r < r_count; ++r) {
      a[r * c_count + col] %= p;
      if (a[r * c_count + col] != 0) {
        pivot_row = r;
        break;
      }
    }
    if (pivot_row == r_count) continue;
    if (pivot_row != rank) {
      std::swap_ranges(a.begin() + static_cast<std::ptrdiff_t>(pivot_row * c_count),
                       a.begin() + static_cast<std::ptrdiff_t>((pivot_row + 1) * c_count),
                       a.begin() + static_cast<std::ptrdiff_t>(rank * c_count));
    }
    std::uint64_t* piv = &a[rank * c_count];
    for (std::size_t j = col; j < c_count; ++j) piv[j] %= p;
    const std::uint64_t inv = field.inv(piv[col]);
    for (std::size_t j = col; j < c_count; ++j) piv[j] = field.mul(piv[j], inv);
    for (std::size_t r = rank + 1; r < r_count; ++r) {
      std::uint64_t* row = &a[r * c_count];
      row[col] %= p;
      if (row[col] == 0) continue;
      const std::uint64_t fac = p - row[col];
      row[col] = 0;
      if (lazy) {
        for (std::size_t j = col + 1; j < c_count; ++j) row[j] += fac * piv[j];
      } else {
        for (std::size_t j = col + 1; j < c_count; ++j) {
          row[j] = (row[j] % p + fac * piv[j] % p) % p;
        }
      }
    }
    ++rank;
  }
  return rank;
}

// Right-looking sparse elimination with singleton cascades and a restricted
// Markowitz pivot search. Row lists are authoritative; column lists may hold
// stale row ids and are validated lazily.
class FpEliminator {
 public:
  FpEliminator(const SparseMatrixFp& m, const RankOptions& opt)
      : opt_(opt), field_(m.modulus()), p_(m.modulus()) {
    n_rows_ = m.rows();
    n_cols_ = m.cols();
    rows_.assign(n_rows_, {});
    row_alive_.assign(n_rows_, 1);
    col_rows_.assign(n_cols_, {});
    col_live_.assign(n_cols_, 0);
    col_alive_.assign(n_cols_, 1);

    std::vector<SparseEntry> entries = m.entries();
    std::sort(entries.begin(), entries.end(),
              [](const SparseEntry& a, const SparseEntry& b) {
                return a.row != b.row ? a.row < b.row : a.col < b.col;
              });
    for (std::size_t i = 0; i + 1 < entries.size(); ++i) {
      if (entries[i].row == entries[i + 1].row &&
          entries[i].col == entries[i + 1].col) {
        throw std::invalid_argument("duplicate (row, col) entry in sparse matrix");
      }
    }
    for (const SparseEntry& e : entries) {
      rows_[e.row].emplace_back(e.col, e.value);
      col_rows_[e.col].push_back(e.row);
      ++col_live_[e.col];
    }
    nnz_ = entries.size();
    live_rows_ = n_rows_;
    live_cols_ = n_cols_;
    for (std::uint32_t r = 0; r < n_rows_; ++r) {
      if (rows_[r].size() <= 1) row_queue_.push_back(r);
    }
    for (std::uint32_t c = 0; c < n_cols_; ++c) {
      if (col_live_[c] <= 1) col_queue_.push_back(c);
    }
  }

  std::size_t rank() {
    while (live_rows_ > 0 && live_cols_ > 0) {
      if (drain_queues()) continue;
      if (live_rows_ == 0 || live_cols_ == 0) break;
      if (should_go_dense()) {
        dense_finish();
        return rank_;
      }
      markowitz_pivot();
      if (nnz_ > opt_.max_fill_entries) {
        throw capacity_error("sparse elimination fill exceeded budget (" +
                             std::to_string(nnz_) + " entries)");
      }
    }
    return rank_;
  }

 private:
  using Entry = std::pair<std::uint32_t, std::uint64_t>;  // (col, value)

  bool row_has(std::uint32_t r, std::uint32_t c) const {
    const auto& row = rows_[r];
    auto it = std::lower_bound(
        row.begin(), row.end(), c,
        [](const Entry& e, std::uint32_t col) { return e.first < col; });
    return it != row.end() && it->first == c;
  }

  std::uint64_t row_value(std::uint32_t r, std::uint32_t c) const {
    const auto& row = rows_[r];
    auto it = std::lower_bound(
        row.begin(), row.end(), c,
        [](const Entry& e, std::uint32_t col) { return e.first < col; });
    return (it != row.end() && it->first == c) ? it->second : 0;
  }

  void touch_col(std::uint32_t c) {
    if (col_alive_[c] && col_live_[c] <= 1) col_queue_.push_back(c);
  }

  void touch_row(std::uint32_t r) {
    if (row_alive_[r] && rows_[r].size() <= 1) row_queue_.push_back(r);
  }

  // Drops a live entry (r, c) from column bookkeeping (row list untouched).
  void note_col_loss(std::uint32_t c) {
    --col_live_[c];
    touch_col(c);
  }

  void retire_empty_col(std::uint32_t c) {
    col_alive_[c] = 0;
    --live_cols_;
    col_rows_[c].clear();
    col_rows_[c].shrink_to_fit();
  }

  // Removes a dead row's entries from column counts and marks it dead.
  void retire_row(std::uint32_t r) {
    for (const Entry& e : rows_[r]) note_col_loss(e.first);
    nnz_ -= rows_[r].size();
    rows_[r].clear();
    rows_[r].shrink_to_fit();
    row_alive_[r] = 0;
    --live_rows_;
  }

  void compact_col(std::uint32_t c) {
    auto& list = col_rows_[c];
    std::vector<std::uint32_t> live;
    live.reserve(col_live_[c]);
    for (std::uint32_t r : list) {
      if (row_alive_[r] && row_has(r, c)) live.push_back(r);
    }
    std::sort(live.begin(), live.end());
    live.erase(std::unique(live.begin(), live.end()), live.end());
    list = std::move(live);
  }

  // Processes pending singleton/empty rows and columns. Returns true if any
  // progress was made.
  bool drain_queues() {
    bool progress = false;
    while (!row_queue_.empty() || !col_queue_.empty()) {
      if (!col_queue_.empty()) {
        const std::uint32_t c = col_queue_.back();
        col_queue_.pop_back();
        if (!col_alive_[c]) continue;
        if (col_live_[c] == 0) {
          retire_empty_col(c);
          progress = true;
          continue;
        }
        if (col_live_[c] != 1) continue;
        // Unique live row in this column: free pivot, no fill.
        compact_col(c);
        if (col_live_[c] != 1 || col_rows_[c].size() != 1) continue;
        const std::uint32_t r = col_rows_[c][0];
        retire_row(r);  // drops (r, c) too, leaving the column empty
        retire_empty_col(c);
        ++rank_;
        progress = true;
        continue;
      }
      const std::uint32_t r = row_queue_.back();
      row_queue_.pop_back();
      if (!row_alive_[r]) continue;
      if (rows_[r].empty()) {
        row_alive_[r] = 0;
        --live_rows_;
        progress = true;
        continue;
      }
      if (rows_[r].size() != 1) continue;
      // Single-entry row: pivoting removes one column, no fill anywhere.
      const std::uint32_t c = rows_[r][0].first;
      for (std::uint32_t other : col_rows_[c]) {
        if (other == r || !row_alive_[other]) continue;
        auto& row = rows_[other];
        auto it = std::lower_bound(
            row.begin(), row.end(), c,
            [](const Entry& e, std::uint32_t col) { return e.first < col; });
        if (it == row.end() || it->first != c) continue;
        row.erase(it);
        --nnz_;
        touch_row(other);
      }
      col_live_[c] = 1;  // only (r, c) remains
      retire_row(r);
      retire_empty_col(c);
      ++rank_;
      progress = true;
    }
    return progress;
  }

  bool should_go_dense() const {
    const std::uint64_t prod =
        static_cast<std::uint64_t>(live_rows_) * live_cols_;
    if (prod == 0 || prod > opt_.dense_cap_entries) return false;
    if (live_rows_ <= 48 || live_cols_ <= 48) return true;
    return nnz_ * 100 >= prod * opt_.dense_fill_percent;
  }

  void dense_finish() {
    std::vector<std::uint32_t> col_of;  // compact index -> column id
    std::vector<std::uint32_t> col_idx(n_cols_, 0);
    col_of.reserve(live_cols_);
    for (std::uint32_t c = 0; c < n_cols_; ++c) {
      if (col_alive_[c]) {
        col_idx[c] = static_cast<std::uint32_t>(col_of.size());
        col_of.push_back(c);
      }
    }
    const std::size_t c_count = col_of.size();
    std::vector<std::uint64_t> dense;
    dense.assign(static_cast<std::size_t>(live_rows_) * c_count, 0);
    std::size_t out = 0;
    for (std::uint32_t r = 0; r < n_rows_; ++r) {
      if (!row_alive_[r]) continue;
      for (const Entry& e : rows_[r]) {
        dense[out * c_count + col_idx[e.first]] = e.second;
      }
      ++out;
    }
    rank_ += dense_rank_fp(dense, out, c_count, field_);
  }

  void markowitz_pivot() {
    // Collect the lowest-population candidate columns (deterministic order).
    const unsigned k = std::max(1u, opt_.candidate_cols);
    std::vector<std::pair<std::uint32_t, std::uint32_t>> cand;  // (live, col)
    cand.reserve(k + 1);
    for (std::uint32_t c = 0; c < n_cols_; ++c) {
      if (!col_alive_[c]) continue;
      const std::pair<std::uint32_t, std::uint32_t> key{col_live_[c], c};
      if (cand.size() < k) {
        cand.push_back(key);
        std::push_heap(cand.begin(), cand.end());
      } else if (key < cand.front()) {
        std::pop_heap(cand.begin(), cand.end());
        cand.back() = key;
        std::push_heap(cand.begin(), cand.end());
      }
    }
    std::sort(cand.begin(), cand.end());

    std::uint64_t best_cost = std::numeric_limits<std::uint64_t>::max();
    std::uint32_t best_row = 0, best_col = 0;
    bool found = false;
    for (const auto& [live, c] : cand) {
      (void)live;
      compact_col(c);
      const std::uint64_t col_cost = col_live_[c] - 1;
      for (std::uint32_t r : col_rows_[c]) {
        const std::uint64_t cost = (rows_[r].size() - 1) * col_cost;
        if (!found || cost < best_cost) {
          found = true;
          best_cost = cost;
          best_row = r;
          best_col = c;
        }
      }
    }
    if (!found) {
      // All candidates went stale; queues will mop up on the next pass.
      for (std::uint32_t c = 0; c < n_cols_; ++c) {
        if (col_alive_[c]) touch_col(c);
      }
      return;
    }
    eliminate(best_row, best_col);
  }

  void eliminate(std::uint32_t pi, std::uint32_t pj) {
    const std::vector<Entry>& pivot = rows_[pi];
    const std::uint64_t pv = row_value(pi, pj);
    const std::uint64_t inv = field_.inv(pv);

    std::vector<std::uint32_t> targets = std::move(col_rows_[pj]);
    col_rows_[pj].clear();
    for (std::uint32_t r : targets) {
      if (r == pi || !row_alive_[r]) continue;
      const std::uint64_t rv = row_value(r, pj);
      if (rv == 0) continue;  // stale
      const std::uint64_t factor = field_.mul(rv, inv);

      merged_.clear();
      const auto& row = rows_[r];
      merged_.reserve(row.size() + pivot.size());
      std::size_t i = 0, j = 0;
      while (i < row.size() || j < pivot.size()) {
        if (j == pivot.size() ||
            (i < row.size() && row[i].first < pivot[j].first)) {
          merged_.push_back(row[i]);
          ++i;
        } else if (i == row.size() || pivot[j].first < row[i].first) {
          // Fill-in from the pivot row.
          const std::uint64_t val =
              field_.neg(field_.mul(factor, pivot[j].second));
          merged_.emplace_back(pivot[j].first, val);
          col_rows_[pivot[j].first].push_back(r);
          ++col_live_[pivot[j].first];
          ++j;
        } else {
          const std::uint64_t val =
              field_.sub(row[i].second, field_.mul(factor, pivot[j].second));
          if (val != 0) {
            merged_.emplace_back(row[i].first, val);
          } else {
            note_col_loss(row[i].first);
          }
          ++i;
          ++j;
        }
      }
      nnz_ += merged_.size();
      nnz_ -= row.size();
      rows_[r].swap(merged_);
      touch_row(r);
    }
    retire_row(pi);  // brings col_live_[pj] to zero
    retire_empty_col(pj);
    ++rank_;
  }

  RankOptions opt_;
  PrimeField field_;
  std::uint64_t p_;
  std::uint32_t n_rows_ = 0, n_cols_ = 0;
  std::vector<std::vector<Entry>> rows_;
  std::vector<std::uint8_t> row_alive_;
  std::vector<std::vector<std::uint32_t>> col_rows_;
  std::vector<std::uint32_t> col_live_;
  std::vector<std::uint8_t> col_alive_;
  std::vector<std::uint32_t> row_queue_;
  std::vector<std::uint32_t> col_queue_;
  std::vector<Entry> merged_;
  std::uint64_t nnz_ = 0;
  std::uint32_t live_rows_ = 0, live_cols_ = 0;
  std::size_t rank_ = 0;
};

}  // namespace detail

// Rank over F_p. Deterministic for a given entry multiset regardless of
// insertion order.
inline std::size_t sparse_rank_fp(const SparseMatrixFp& m,
                                  const RankOptions& options = {}) {
  detail::FpEliminator elim(m, options);
  return elim.rank();
}

}  // namespace fsig
