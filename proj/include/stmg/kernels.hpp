#pragma once

// Low-level vector and CSR kernels used by the hot paths of the solver
// (smoothing sweeps, residual evaluation, grid transfers, norms).
//
// Every kernel exists as a scalar reference implementation plus optional
// SIMD variants (AVX2 on x86-64, NEON on aarch64) selected at runtime.  All
// variants are bitwise-equivalent: reductions follow one canonical order —
// four lane-strided partial sums
//
//     s_l = sum over positions p ≡ l (mod 4),   result = (s0+s1) + (s2+s3)
//
// with tail elements folded into their p-mod-4 lane, and no FMA contraction
// anywhere (the build pins -ffp-contract=off on kernel translation units).
// This is what makes solver output — residual histories included — identical
// no matter which backend the dispatcher picks, and therefore reproducible
// across machines of different ISA.

#include <cstdint>
#include <span>

namespace stmg::kernels {

enum class Backend { Scalar, Avx2, Neon };

// Backend currently receiving calls.
Backend active_backend();

// Best backend supported by this machine (what auto-selection picks).
Backend best_backend();

// Force a backend, e.g. to compare variants in tests.  Returns false (and
// leaves the selection unchanged) if the requested backend is not supported
// on this machine.
bool set_backend(Backend b);

const char* backend_name(Backend b);

// Dot product of x and y (canonical reduction order).  Sizes must match.
double dot(std::span<const double> x, std::span<const double> y);

// Euclidean norm of x (canonical reduction order).
double norm2(std::span<const double> x);

// y <- y + a*x.  Sizes must match.
void axpy(double a, std::span<const double> x, std::span<double> y);

// y <- A x for A in CSR form (row_ptr of size rows+1; col_idx/vals of size
// nnz).  Row sums use the canonical reduction order over the row's entries.
void csr_spmv(std::span<const std::int32_t> row_ptr,
              std::span<const std::int32_t> col_idx,
              std::span<const double> vals,
              std::span<const double> x,
              std::span<double> y);

// y <- y + A x.
void csr_spmv_add(std::span<const std::int32_t> row_ptr,
                  std::span<const std::int32_t> col_idx,
                  std::span<const double> vals,
                  std::span<const double> x,
                  std::span<double> y);

// r <- b - A x.
void csr_residual(std::span<const std::int32_t> row_ptr,
                  std::span<const std::int32_t> col_idx,
                  std::span<const double> vals,
                  std::span<const double> b,
                  std::span<const double> x,
                  std::span<double> r);

// u_i <- u_i + omega * (r_i * inv_diag_i), evaluated with exactly that
// association in every backend.
void jacobi_update(double omega,
                   std::span<const double> inv_diag,
                   std::span<const double> r,
                   std::span<double> u);

}  // namespace stmg::kernels
