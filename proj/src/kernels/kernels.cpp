// Scalar reference kernels and the runtime backend dispatcher.
//
// The scalar implementations below spell out the canonical reduction order
// documented in kernels.hpp; the SIMD variants reproduce it exactly, so any
// observable difference between backends is a bug (and is tested for).

#include "stmg/kernels.hpp"

#include <cmath>
#include <stdexcept>

#include "kernel_table.hpp"

namespace stmg::kernels {
namespace detail {

// ============================================================
// Scalar reference implementations
// ============================================================

namespace {

double dot_scalar(const double* x, const double* y, std::size_t n) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::size_t i = 0; i < n; ++i) s[i & 3] += x[i] * y[i];
  return (s[0] + s[1]) + (s[2] + s[3]);
}

double norm2_scalar(const double* x, std::size_t n) {
  return std::sqrt(dot_scalar(x, x, n));
}

void axpy_scalar(double a, const double* x, double* y, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) y[i] = y[i] + a * x[i];
}

// One CSR row reduced in the canonical order; `lo`/`hi` bound the row's
// entries in col_idx/vals.
inline double row_dot_scalar(const std::int32_t* col_idx, const double* vals,
                             const double* x, std::int32_t lo,
                             std::int32_t hi) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::int32_t k = lo; k < hi; ++k)
    s[(k - lo) & 3] += vals[k] * x[col_idx[k]];
  return (s[0] + s[1]) + (s[2] + s[3]);
}

void csr_spmv_scalar(const std::int32_t* row_ptr, const std::int32_t* col_idx,
                     const double* vals, const double* x, double* y,
                     std::size_t rows) {
  for (std::size_t r = 0; r < rows; ++r)
    y[r] = row_dot_scalar(col_idx, vals, x, row_ptr[r], row_ptr[r + 1]);
}

void csr_spmv_add_scalar(const std::int32_t* row_ptr,
                         const std::int32_t* col_idx, const double* vals,
                         const double* x, double* y, std::size_t rows) {
  for (std::size_t r = 0; r < rows; ++r)
    y[r] = y[r] + row_dot_scalar(col_idx, vals, x, row_ptr[r], row_ptr[r + 1]);
}

void csr_residual_scalar(const std::int32_t* row_ptr,
                         const std::int32_t* col_idx, const double* vals,
                         const double* b, const double* x, double* r,
                         std::size_t rows) {
  for (std::size_t i = 0; i < rows; ++i)
    r[i] = b[i] - row_dot_scalar(col_idx, vals, x, row_ptr[i], row_ptr[i + 1]);
}

void jacobi_update_scalar(double omega, const double* inv_diag,
                          const double* r, double* u, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i) u[i] = u[i] + omega * (r[i] * inv_diag[i]);
}

}  // namespace

const KernelTable& scalar_table() {
  static const KernelTable t{dot_scalar,         norm2_scalar,
                             axpy_scalar,        csr_spmv_scalar,
                             csr_spmv_add_scalar, csr_residual_scalar,
                             jacobi_update_scalar};
  return t;
}

}  // namespace detail

// ============================================================
// Runtime dispatch
// ============================================================

namespace {

struct Dispatch {
  Backend backend;
  const detail::KernelTable* table;
};

Dispatch make_default_dispatch() {
#if defined(__x86_64__) || defined(_M_X64)
  if (__builtin_cpu_supports("avx2"))
    return {Backend::Avx2, &detail::avx2_table()};
#elif defined(__aarch64__) || defined(_M_ARM64)
  return {Backend::Neon, &detail::neon_table()};
#endif
  return {Backend::Scalar, &detail::scalar_table()};
}

Dispatch& dispatch() {
  static Dispatch d = make_default_dispatch();
  return d;
}

}  // namespace

Backend active_backend() { return dispatch().backend; }

Backend best_backend() { return make_default_dispatch().backend; }

bool set_backend(Backend b) {
  switch (b) {
    case Backend::Scalar:
      dispatch() = {Backend::Scalar, &detail::scalar_table()};
      return true;
    case Backend::Avx2:
#if defined(__x86_64__) || defined(_M_X64)
      if (__builtin_cpu_supports("avx2")) {
        dispatch() = {Backend::Avx2, &detail::avx2_table()};
        return true;
      }
#endif
      return false;
    case Backend::Neon:
#if defined(__aarch64__) || defined(_M_ARM64)
      dispatch() = {Backend::Neon, &detail::neon_table()};
      return true;
#else
      return false;
#endif
  }
  return false;
}

const char* backend_name(Backend b) {
  switch (b) {
    case Backend::Scalar: return "scalar";
    case Backend::Avx2: return "avx2";
    case Backend::Neon: return "neon";
  }
  return "?";
}

// ============================================================
// Public entry points
// ============================================================

double dot(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("dot: size mismatch");
  return dispatch().table->dot(x.data(), y.data(), x.size());
}

double norm2(std::span<const double> x) {
  return dispatch().table->norm2(x.data(), x.size());
}

void axpy(double a, std::span<const double> x, std::span<double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("axpy: size mismatch");
  dispatch().table->axpy(a, x.data(), y.data(), x.size());
}

void csr_spmv(std::span<const std::int32_t> row_ptr,
              std::span<const std::int32_t> col_idx,
              std::span<const double> vals, std::span<const double> x,
              std::span<double> y) {
  if (row_ptr.size() != y.size() + 1)
    throw std::invalid_argument("csr_spmv: row_ptr/y size mismatch");
  dispatch().table->csr_spmv(row_ptr.data(), col_idx.data(), vals.data(),
                             x.data(), y.data(), y.size());
}

void csr_spmv_add(std::span<const std::int32_t> row_ptr,
                  std::span<const std::int32_t> col_idx,
                  std::span<const double> vals, std::span<const double> x,
                  std::span<double> y) {
  if (row_ptr.size() != y.size() + 1)
    throw std::invalid_argument("csr_spmv_add: row_ptr/y size mismatch");
  dispatch().table->csr_spmv_add(row_ptr.data(), col_idx.data(), vals.data(),
                                 x.data(), y.data(), y.size());
}

void csr_residual(std::span<const std::int32_t> row_ptr,
                  std::span<const std::int32_t> col_idx,
                  std::span<const double> vals, std::span<const double> b,
                  std::span<const double> x, std::span<double> r) {
  if (row_ptr.size() != r.size() + 1 || b.size() != r.size())
    throw std::invalid_argument("csr_residual: size mismatch");
  dispatch().table->csr_residual(row_ptr.data(), col_idx.data(), vals.data(),
                                 b.data(), x.data(), r.data(), r.size());
}

void jacobi_update(double omega, std::span<const double> inv_diag,
                   std::span<const double> r, std::span<double> u) {
  if (inv_diag.size() != u.size() || r.size() != u.size())
    throw std::invalid_argument("jacobi_update: size mismatch");
  dispatch().table->jacobi_update(omega, inv_diag.data(), r.data(), u.data(),
                                  u.size());
}

}  // namespace stmg::kernels
