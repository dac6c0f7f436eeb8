// Built with -mavx2 -mfma; only reached after a runtime CPU check.

#include <immintrin.h>

#include "kernel_impl.hpp"

namespace nqw::kernels::detail {
namespace {

// Lane-pair complex product: [x0*y0, x1*y1] for x = [x0r x0i x1r x1i].
inline __m256d cmul(__m256d x, __m256d y) {
  const __m256d yr = _mm256_movedup_pd(y);
  const __m256d yi = _mm256_permute_pd(y, 0xF);
  const __m256d xs = _mm256_permute_pd(x, 0x5);
  return _mm256_fmaddsub_pd(x, yr, _mm256_mul_pd(xs, yi));
}

}  // namespace

void symbol_step_avx2(double* amps, std::size_t n, const double* c, const double* phase) {
  const __m256d col0 = _mm256_setr_pd(c[0], c[1], c[4], c[5]);
  const __m256d col1 = _mm256_setr_pd(c[2], c[3], c[6], c[7]);
  const __m256d conj_hi = _mm256_setr_pd(0.0, 0.0, 0.0, -0.0);
  for (std::size_t j = 0; j < n; ++j) {
    double* p = amps + 4 * j;
    const __m256d v = _mm256_loadu_pd(p);
    const __m256d uu = _mm256_permute2f128_pd(v, v, 0x00);
    const __m256d dd = _mm256_permute2f128_pd(v, v, 0x11);
    const __m256d ab = _mm256_add_pd(cmul(col0, uu), cmul(col1, dd));
    const __m256d ph = _mm256_xor_pd(
        _mm256_broadcast_pd(reinterpret_cast<const __m128d*>(phase + 2 * j)), conj_hi);
    _mm256_storeu_pd(p, cmul(ab, ph));
  }
}

void probability_avx2(const double* amps, std::size_t n, double* out) {
  std::size_t j = 0;
  for (; j + 2 <= n; j += 2) {
    const __m256d a = _mm256_loadu_pd(amps + 4 * j);
    const __m256d b = _mm256_loadu_pd(amps + 4 * j + 4);
    const __m256d h = _mm256_hadd_pd(_mm256_mul_pd(a, a), _mm256_mul_pd(b, b));
    const __m128d s = _mm_add_pd(_mm256_castpd256_pd128(h), _mm256_extractf128_pd(h, 1));
    _mm_storeu_pd(out + j, s);
  }
  for (; j < n; ++j) {
    const double* v = amps + 4 * j;
    out[j] = v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3];
  }
}

void scale_avx2(double* amps, std::size_t n, const double* factor) {
  for (std::size_t j = 0; j < n; ++j) {
    double* p = amps + 4 * j;
    _mm256_storeu_pd(p, _mm256_mul_pd(_mm256_loadu_pd(p), _mm256_broadcast_sd(factor + j)));
  }
}

}  // namespace nqw::kernels::detail
