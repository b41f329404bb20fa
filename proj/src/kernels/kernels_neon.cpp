// NEON kernel variants for aarch64.
//
// NEON registers hold two doubles, so the canonical 4-lane reduction is
// realised with a pair of 2-lane accumulators: acc01 carries lanes {0,1},
// acc23 carries lanes {2,3}.  The combine (s0+s1)+(s2+s3) and the tail
// folding match the scalar reference exactly; vmulq/vaddq are kept separate
// (no vfmaq) so results stay bitwise-identical across backends.
//
// CSR row products are gather-bound — NEON has no gather instruction, so the
// row kernels keep the scalar canonical pattern; the win on aarch64 comes
// from the contiguous elementwise kernels.

#if defined(__aarch64__) || defined(_M_ARM64)

#include <arm_neon.h>

#include <cmath>
#include <cstdint>

#include "kernel_table.hpp"

namespace stmg::kernels::detail {
namespace {

double dot_neon(const double* x, const double* y, std::size_t n) {
  float64x2_t acc01 = vdupq_n_f64(0.0);
  float64x2_t acc23 = vdupq_n_f64(0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    acc01 = vaddq_f64(acc01, vmulq_f64(vld1q_f64(x + i), vld1q_f64(y + i)));
    acc23 =
        vaddq_f64(acc23, vmulq_f64(vld1q_f64(x + i + 2), vld1q_f64(y + i + 2)));
  }
  double s[4] = {vgetq_lane_f64(acc01, 0), vgetq_lane_f64(acc01, 1),
                 vgetq_lane_f64(acc23, 0), vgetq_lane_f64(acc23, 1)};
  for (; i < n; ++i) s[i & 3] += x[i] * y[i];
  return (s[0] + s[1]) + (s[2] + s[3]);
}

double norm2_neon(const double* x, std::size_t n) {
  return std::sqrt(dot_neon(x, x, n));
}

void axpy_neon(double a, const double* x, double* y, std::size_t n) {
  const float64x2_t av = vdupq_n_f64(a);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t xv = vld1q_f64(x + i);
    const float64x2_t yv = vld1q_f64(y + i);
    vst1q_f64(y + i, vaddq_f64(yv, vmulq_f64(av, xv)));
  }
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

inline double row_dot_neon(const std::int32_t* col_idx, const double* vals,
                           const double* x, std::int32_t lo, std::int32_t hi) {
  double s[4] = {0.0, 0.0, 0.0, 0.0};
  for (std::int32_t k = lo; k < hi; ++k)
    s[(k - lo) & 3] += vals[k] * x[col_idx[k]];
  return (s[0] + s[1]) + (s[2] + s[3]);
}

void csr_spmv_neon(const std::int32_t* row_ptr, const std::int32_t* col_idx,
                   const double* vals, const double* x, double* y,
                   std::size_t rows) {
  for (std::size_t r = 0; r < rows; ++r)
    y[r] = row_dot_neon(col_idx, vals, x, row_ptr[r], row_ptr[r + 1]);
}

void csr_spmv_add_neon(const std::int32_t* row_ptr, const std::int32_t* col_idx,
                       const double* vals, const double* x, double* y,
                       std::size_t rows) {
  for (std::size_t r = 0; r < rows; ++r)
    y[r] = y[r] + row_dot_neon(col_idx, vals, x, row_ptr[r], row_ptr[r + 1]);
}

void csr_residual_neon(const std::int32_t* row_ptr, const std::int32_t* col_idx,
                       const double* vals, const double* b, const double* x,
                       double* r, std::size_t rows) {
  for (std::size_t i = 0; i < rows; ++i)
    r[i] = b[i] - row_dot_neon(col_idx, vals, x, row_ptr[i], row_ptr[i + 1]);
}

void jacobi_update_neon(double omega, const double* inv_diag, const double* r,
                        double* u, std::size_t n) {
  const float64x2_t wv = vdupq_n_f64(omega);
  std::size_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const float64x2_t rv = vld1q_f64(r + i);
    const float64x2_t dv = vld1q_f64(inv_diag + i);
    const float64x2_t uv = vld1q_f64(u + i);
    vst1q_f64(u + i, vaddq_f64(uv, vmulq_f64(wv, vmulq_f64(rv, dv))));
  }
  for (; i < n; ++i) u[i] = u[i] + omega * (r[i] * inv_diag[i]);
}

}  // namespace

const KernelTable& neon_table() {
  static const KernelTable t{dot_neon,         norm2_neon,
                             axpy_neon,        csr_spmv_neon,
                             csr_spmv_add_neon, csr_residual_neon,
                             jacobi_update_neon};
  return t;
}

}  // namespace stmg::kernels::detail

#endif  // aarch64
