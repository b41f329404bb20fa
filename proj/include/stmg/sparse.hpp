#pragma once

// Compressed-sparse-row matrix used throughout the solver.
//
// Rows are stored with strictly ascending column indices and no duplicates,
// which fixes the traversal order of every matrix-vector product and keeps
// results reproducible.  The arithmetic-heavy operations delegate to the
// runtime-dispatched kernels; construction-time operations (transpose,
// sparse products) are plain scalar code with a deterministic accumulation
// order.

#include <cstdint>
#include <span>
#include <vector>

namespace stmg {

struct Triplet {
  std::int32_t row = 0;
  std::int32_t col = 0;
  double value = 0.0;
};

class SparseMatrix {
 public:
  SparseMatrix() = default;

  // Duplicate (row, col) entries are summed; rows end up column-sorted.
  static SparseMatrix from_triplets(std::int32_t rows, std::int32_t cols,
                                    std::vector<Triplet> triplets);

  std::int32_t rows() const { return rows_; }
  std::int32_t cols() const { return cols_; }
  std::size_t nnz() const { return values_.size(); }

  std::span<const std::int32_t> row_ptr() const { return row_ptr_; }
  std::span<const std::int32_t> col_idx() const { return col_idx_; }
  std::span<const double> values() const { return values_; }

  // y = A x  /  y += A x  /  r = b - A x (via the dispatched kernels).
  void multiply(std::span<const double> x, std::span<double> y) const;
  void multiply_add(std::span<const double> x, std::span<double> y) const;
  void residual(std::span<const double> b, std::span<const double> x,
                std::span<double> r) const;

  SparseMatrix transposed() const;

  // Copy with every stored value multiplied by s (sparsity unchanged).
  SparseMatrix scaled(double s) const;

  // Stored diagonal entries; structurally missing ones read as zero.
  std::vector<double> diagonal() const;

  // Number of stored entries in one row.
  std::int32_t row_nnz(std::int32_t r) const {
    return row_ptr_[r + 1] - row_ptr_[r];
  }

  // Entry lookup (zero if not stored) — test/diagnostic helper.
  double coeff(std::int32_t r, std::int32_t c) const;

  // C = A * B with deterministic per-row accumulation order.
  static SparseMatrix multiply(const SparseMatrix& a, const SparseMatrix& b);

 private:
  std::int32_t rows_ = 0;
  std::int32_t cols_ = 0;
  std::vector<std::int32_t> row_ptr_{0};
  std::vector<std::int32_t> col_idx_;
  std::vector<double> values_;
};

}  // namespace stmg
