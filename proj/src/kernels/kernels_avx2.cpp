// AVX2 kernel variants.
//
// Compiled with -mavx2 -ffp-contract=off and only on x86-64; selected at
// runtime when the CPU reports AVX2.  Each kernel reproduces the scalar
// reference bit for bit: one 4-lane accumulator register realises the
// canonical lane-strided reduction (lane l holds positions p ≡ l mod 4),
// remainder elements fold into their lane after the vector loop, and the
// final combine is (s0+s1)+(s2+s3).  Multiplies and adds stay separate — no
// FMA — because the scalar reference has none.

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstdint>

#include "kernel_table.hpp"

namespace stmg::kernels::detail {
namespace {

// Reduce a 4-lane accumulator plus a scalar tail starting at position `p0`.
inline double reduce_tail(__m256d acc, const double* x, const double* y,
                          std::size_t p0, std::size_t n) {
  alignas(32) double s[4];
  _mm256_store_pd(s, acc);
  for (std::size_t i = p0; i < n; ++i) s[i & 3] += x[i] * y[i];
  return (s[0] + s[1]) + (s[2] + s[3]);
}

double dot_avx2(const double* x, const double* y, std::size_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d yv = _mm256_loadu_pd(y + i);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(xv, yv));
  }
  return reduce_tail(acc, x, y, i, n);
}

double norm2_avx2(const double* x, std::size_t n) {
  return std::sqrt(dot_avx2(x, x, n));
}

void axpy_avx2(double a, const double* x, double* y, std::size_t n) {
  const __m256d av = _mm256_set1_pd(a);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d xv = _mm256_loadu_pd(x + i);
    const __m256d yv = _mm256_loadu_pd(y + i);
    _mm256_storeu_pd(y + i, _mm256_add_pd(yv, _mm256_mul_pd(av, xv)));
  }
  for (; i < n; ++i) y[i] = y[i] + a * x[i];
}

// One CSR row: gather x through col_idx, canonical order over row positions.
inline double row_dot_avx2(const std::int32_t* col_idx, const double* vals,
                           const double* x, std::int32_t lo, std::int32_t hi) {
  __m256d acc = _mm256_setzero_pd();
  std::int32_t k = lo;
  for (; k + 4 <= hi; k += 4) {
    const __m128i idx =
        _mm_loadu_si128(reinterpret_cast<const __m128i*>(col_idx + k));
    const __m256d vv = _mm256_loadu_pd(vals + k);
    const __m256d xv = _mm256_i32gather_pd(x, idx, 8);
    acc = _mm256_add_pd(acc, _mm256_mul_pd(vv, xv));
  }
  alignas(32) double s[4];
  _mm256_store_pd(s, acc);
  for (; k < hi; ++k) s[(k - lo) & 3] += vals[k] * x[col_idx[k]];
  return (s[0] + s[1]) + (s[2] + s[3]);
}

void csr_spmv_avx2(const std::int32_t* row_ptr, const std::int32_t* col_idx,
                   const double* vals, const double* x, double* y,
                   std::size_t rows) {
  for (std::size_t r = 0; r < rows; ++r)
    y[r] = row_dot_avx2(col_idx, vals, x, row_ptr[r], row_ptr[r + 1]);
}

void csr_spmv_add_avx2(const std::int32_t* row_ptr, const std::int32_t* col_idx,
                       const double* vals, const double* x, double* y,
                       std::size_t rows) {
  for (std::size_t r = 0; r < rows; ++r)
    y[r] = y[r] + row_dot_avx2(col_idx, vals, x, row_ptr[r], row_ptr[r + 1]);
}

void csr_residual_avx2(const std::int32_t* row_ptr, const std::int32_t* col_idx,
                       const double* vals, const double* b, const double* x,
                       double* r, std::size_t rows) {
  for (std::size_t i = 0; i < rows; ++i)
    r[i] = b[i] - row_dot_avx2(col_idx, vals, x, row_ptr[i], row_ptr[i + 1]);
}

void jacobi_update_avx2(double omega, const double* inv_diag, const double* r,
                        double* u, std::size_t n) {
  const __m256d wv = _mm256_set1_pd(omega);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d rv = _mm256_loadu_pd(r + i);
    const __m256d dv = _mm256_loadu_pd(inv_diag + i);
    const __m256d uv = _mm256_loadu_pd(u + i);
    _mm256_storeu_pd(
        u + i, _mm256_add_pd(uv, _mm256_mul_pd(wv, _mm256_mul_pd(rv, dv))));
  }
  for (; i < n; ++i) u[i] = u[i] + omega * (r[i] * inv_diag[i]);
}

}  // namespace

const KernelTable& avx2_table() {
  static const KernelTable t{dot_avx2,         norm2_avx2,
                             axpy_avx2,        csr_spmv_avx2,
                             csr_spmv_add_avx2, csr_residual_avx2,
                             jacobi_update_avx2};
  return t;
}

}  // namespace stmg::kernels::detail

#endif  // x86-64
