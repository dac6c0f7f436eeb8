#pragma once

// Raw-pointer entry points per ISA. Kept free of inline library code so the
// AVX2/NEON translation units (built with extra -m flags) cannot emit ODR
// copies of shared inline functions.

#include <cstddef>

namespace nqw::kernels::detail {

void symbol_step_scalar(double* amps, std::size_t n, const double* coin, const double* phase);
void probability_scalar(const double* amps, std::size_t n, double* out);
void scale_scalar(double* amps, std::size_t n, const double* factor);

#if defined(NQW_HAVE_AVX2_KERNELS)
void symbol_step_avx2(double* amps, std::size_t n, const double* coin, const double* phase);
void probability_avx2(const double* amps, std::size_t n, double* out);
void scale_avx2(double* amps, std::size_t n, const double* factor);
#endif

#if defined(NQW_HAVE_NEON_KERNELS)
void symbol_step_neon(double* amps, std::size_t n, const double* coin, const double* phase);
void probability_neon(const double* amps, std::size_t n, double* out);
void scale_neon(double* amps, std::size_t n, const double* factor);
#endif

}  // namespace nqw::kernels::detail
