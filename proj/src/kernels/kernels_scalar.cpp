#include "kernel_impl.hpp"

namespace nqw::kernels::detail {

void symbol_step_scalar(double* amps, std::size_t n, const double* c, const double* phase) {
  for (std::size_t j = 0; j < n; ++j) {
    double* v = amps + 4 * j;
    const double ur = v[0], ui = v[1], dr = v[2], di = v[3];
    // a = c00 u + c01 d, b = c10 u + c11 d
    const double ar = c[0] * ur - c[1] * ui + c[2] * dr - c[3] * di;
    const double ai = c[0] * ui + c[1] * ur + c[2] * di + c[3] * dr;
    const double br = c[4] * ur - c[5] * ui + c[6] * dr - c[7] * di;
    const double bi = c[4] * ui + c[5] * ur + c[6] * di + c[7] * dr;
    const double pr = phase[2 * j], pi = phase[2 * j + 1];
    v[0] = pr * ar - pi * ai;
    v[1] = pr * ai + pi * ar;
    v[2] = pr * br + pi * bi;
    v[3] = pr * bi - pi * br;
  }
}

void probability_scalar(const double* amps, std::size_t n, double* out) {
  for (std::size_t j = 0; j < n; ++j) {
    const double* v = amps + 4 * j;
    out[j] = v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3];
  }
}

void scale_scalar(double* amps, std::size_t n, const double* factor) {
  for (std::size_t j = 0; j < n; ++j) {
    double* v = amps + 4 * j;
    const double f = factor[j];
    v[0] *= f;
    v[1] *= f;
    v[2] *= f;
    v[3] *= f;
  }
}

}  // namespace nqw::kernels::detail
