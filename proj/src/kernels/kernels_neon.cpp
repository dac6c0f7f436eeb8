// aarch64 only; Advanced SIMD is mandatory there, so no runtime check.

#include <arm_neon.h>

#include "kernel_impl.hpp"

namespace nqw::kernels::detail {
namespace {

inline float64x2_t cmul(float64x2_t x, float64x2_t y) {
  const float64x2_t yr = vdupq_laneq_f64(y, 0);
  const float64x2_t yi = vdupq_laneq_f64(y, 1);
  const float64x2_t xs = vextq_f64(x, x, 1);  // [xi, xr]
  const float64x2_t sign = {-1.0, 1.0};
  return vfmaq_f64(vmulq_f64(vmulq_f64(xs, yi), sign), x, yr);
}

}  // namespace

void symbol_step_neon(double* amps, std::size_t n, const double* c, const double* phase) {
  const float64x2_t c00 = vld1q_f64(c);
  const float64x2_t c01 = vld1q_f64(c + 2);
  const float64x2_t c10 = vld1q_f64(c + 4);
  const float64x2_t c11 = vld1q_f64(c + 6);
  const float64x2_t conj = {1.0, -1.0};
  for (std::size_t j = 0; j < n; ++j) {
    double* p = amps + 4 * j;
    const float64x2_t u = vld1q_f64(p);
    const float64x2_t d = vld1q_f64(p + 2);
    const float64x2_t a = vaddq_f64(cmul(c00, u), cmul(c01, d));
    const float64x2_t b = vaddq_f64(cmul(c10, u), cmul(c11, d));
    const float64x2_t ph = vld1q_f64(phase + 2 * j);
    vst1q_f64(p, cmul(a, ph));
    vst1q_f64(p + 2, cmul(b, vmulq_f64(ph, conj)));
  }
}

void probability_neon(const double* amps, std::size_t n, double* out) {
  for (std::size_t j = 0; j < n; ++j) {
    const float64x2_t u = vld1q_f64(amps + 4 * j);
    const float64x2_t d = vld1q_f64(amps + 4 * j + 2);
    out[j] = vaddvq_f64(vfmaq_f64(vmulq_f64(u, u), d, d));
  }
}

void scale_neon(double* amps, std::size_t n, const double* factor) {
  for (std::size_t j = 0; j < n; ++j) {
    double* p = amps + 4 * j;
    const float64x2_t f = vdupq_n_f64(factor[j]);
    vst1q_f64(p, vmulq_f64(vld1q_f64(p), f));
    vst1q_f64(p + 2, vmulq_f64(vld1q_f64(p + 2), f));
  }
}

}  // namespace nqw::kernels::detail
