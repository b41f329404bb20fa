#pragma once

// Internal dispatch table shared by the kernel translation units.  Each ISA
// variant fills one of these with its function pointers; kernels.cpp owns the
// runtime selection.  Not installed — include only from src/kernels/.

#include <cstdint>

namespace stmg::kernels::detail {

struct KernelTable {
  double (*dot)(const double*, const double*, std::size_t);
  double (*norm2)(const double*, std::size_t);
  void (*axpy)(double, const double*, double*, std::size_t);
  void (*csr_spmv)(const std::int32_t*, const std::int32_t*, const double*,
                   const double*, double*, std::size_t);
  void (*csr_spmv_add)(const std::int32_t*, const std::int32_t*, const double*,
                       const double*, double*, std::size_t);
  void (*csr_residual)(const std::int32_t*, const std::int32_t*, const double*,
                       const double*, const double*, double*, std::size_t);
  void (*jacobi_update)(double, const double*, const double*, double*,
                        std::size_t);
};

const KernelTable& scalar_table();

#if defined(__x86_64__) || defined(_M_X64)
const KernelTable& avx2_table();  // defined in kernels_avx2.cpp
#endif
#if defined(__aarch64__) || defined(_M_ARM64)
const KernelTable& neon_table();  // defined in kernels_neon.cpp
#endif

}  // namespace stmg::kernels::detail
