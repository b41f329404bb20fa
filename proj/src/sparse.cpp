#include "stmg/sparse.hpp"

#include <algorithm>
#include <stdexcept>

#include "stmg/kernels.hpp"

namespace stmg {

SparseMatrix SparseMatrix::from_triplets(std::int32_t rows, std::int32_t cols,
                                         std::vector<Triplet> triplets) {
  if (rows < 0 || cols < 0)
    throw std::invalid_argument("from_triplets: negative dimension");
  for (const Triplet& t : triplets)
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols)
      throw std::out_of_range("from_triplets: index outside matrix");

  std::sort(triplets.begin(), triplets.end(),
            [](const Triplet& a, const Triplet& b) {
              return a.row != b.row ? a.row < b.row : a.col < b.col;
            });

  SparseMatrix m;
  m.rows_ = rows;
  m.cols_ = cols;
  m.row_ptr_.assign(static_cast<std::size_t>(rows) + 1, 0);
  m.col_idx_.reserve(triplets.size());
  m.values_.reserve(triplets.size());

  std::size_t i = 0;
  for (std::int32_t r = 0; r < rows; ++r) {
    while (i < triplets.size() && triplets[i].row == r) {
      const std::int32_t c = triplets[i].col;
      double v = triplets[i].value;
      ++i;
      while (i < triplets.size() && triplets[i].row == r &&
             triplets[i].col == c) {
        v += triplets[i].value;
        ++i;
      }
      m.col_idx_.push_back(c);
      m.values_.push_back(v);
    }
    m.row_ptr_[r + 1] = static_cast<std::int32_t>(m.col_idx_.size());
  }
  return m;
}

void SparseMatrix::multiply(std::span<const double> x,
                            std::span<double> y) const {
  if (x.size() != static_cast<std::size_t>(cols_) ||
      y.size() != static_cast<std::size_t>(rows_))
    throw std::invalid_argument("multiply: dimension mismatch");
  kernels::csr_spmv(row_ptr_, col_idx_, values_, x, y);
}

void SparseMatrix::multiply_add(std::span<const double> x,
                                std::span<double> y) const {
  if (x.size() != static_cast<std::size_t>(cols_) ||
      y.size() != static_cast<std::size_t>(rows_))
    throw std::invalid_argument("multiply_add: dimension mismatch");
  kernels::csr_spmv_add(row_ptr_, col_idx_, values_, x, y);
}

void SparseMatrix::residual(std::span<const double> b,
                            std::span<const double> x,
                            std::span<double> r) const {
  if (x.size() != static_cast<std::size_t>(cols_) ||
      b.size() != static_cast<std::size_t>(rows_) || r.size() != b.size())
    throw std::invalid_argument("residual: dimension mismatch");
  kernels::csr_residual(row_ptr_, col_idx_, values_, b, x, r);
}

SparseMatrix SparseMatrix::transposed() const {
  SparseMatrix t;
  t.rows_ = cols_;
  t.cols_ = rows_;
  t.row_ptr_.assign(static_cast<std::size_t>(cols_) + 1, 0);
  t.col_idx_.resize(nnz());
  t.values_.resize(nnz());

  for (const std::int32_t c : col_idx_) ++t.row_ptr_[c + 1];
  for (std::int32_t c = 0; c < cols_; ++c) t.row_ptr_[c + 1] += t.row_ptr_[c];

  std::vector<std::int32_t> cursor(t.row_ptr_.begin(), t.row_ptr_.end() - 1);
  for (std::int32_t r = 0; r < rows_; ++r) {
    for (std::int32_t k = row_ptr_[r]; k < row_ptr_[r + 1]; ++k) {
      const std::int32_t pos = cursor[col_idx_[k]]++;
      t.col_idx_[pos] = r;
      t.values_[pos] = values_[k];
    }
  }
  // Row-major traversal emits each transposed row with ascending columns
  // already, so no per-row sort is needed.
  return t;
}

SparseMatrix SparseMatrix::scaled(double s) const {
  SparseMatrix m = *this;
  for (double& v : m.values_) v *= s;
  return m;
}

std::vector<double> SparseMatrix::diagonal() const {
  const std::int32_t n = std::min(rows_, cols_);
  std::vector<double> d(static_cast<std::size_t>(n), 0.0);
  for (std::int32_t r = 0; r < n; ++r) d[r] = coeff(r, r);
  return d;
}

double SparseMatrix::coeff(std::int32_t r, std::int32_t c) const {
  if (r < 0 || r >= rows_ || c < 0 || c >= cols_)
    throw std::out_of_range("coeff: index outside matrix");
  const auto first = col_idx_.begin() + row_ptr_[r];
  const auto last = col_idx_.begin() + row_ptr_[r + 1];
  const auto it = std::lower_bound(first, last, c);
  if (it == last || *it != c) return 0.0;
  return values_[static_cast<std::size_t>(it - col_idx_.begin())];
}

SparseMatrix SparseMatrix::multiply(const SparseMatrix& a,
                                    const SparseMatrix& b) {
  if (a.cols_ != b.rows_)
    throw std::invalid_argument("multiply: inner dimension mismatch");

  SparseMatrix c;
  c.rows_ = a.rows_;
  c.cols_ = b.cols_;
  c.row_ptr_.assign(static_cast<std::size_t>(a.rows_) + 1, 0);

  // Gustavson row merge with a dense accumulator.  For a fixed input the
  // accumulation order per output entry is fixed by the CSR layouts, so the
  // product is reproducible.
  std::vector<double> acc(static_cast<std::size_t>(b.cols_), 0.0);
  std::vector<std::int32_t> marker(static_cast<std::size_t>(b.cols_), -1);
  std::vector<std::int32_t> touched;
  touched.reserve(64);

  for (std::int32_t i = 0; i < a.rows_; ++i) {
    touched.clear();
    for (std::int32_t ka = a.row_ptr_[i]; ka < a.row_ptr_[i + 1]; ++ka) {
      const std::int32_t k = a.col_idx_[ka];
      const double aik = a.values_[ka];
      for (std::int32_t kb = b.row_ptr_[k]; kb < b.row_ptr_[k + 1]; ++kb) {
        const std::int32_t j = b.col_idx_[kb];
        if (marker[j] != i) {
          marker[j] = i;
          acc[j] = 0.0;
          touched.push_back(j);
        }
        acc[j] += aik * b.values_[kb];
      }
    }
    std::sort(touched.begin(), touched.end());
    for (const std::int32_t j : touched) {
      c.col_idx_.push_back(j);
      c.values_.push_back(acc[j]);
    }
    c.row_ptr_[i + 1] = static_cast<std::int32_t>(c.col_idx_.size());
  }
  return c;
}

}  // namespace stmg
