#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "nqw/core.hpp"

namespace nqw::kernels {

// Inner loops of the momentum-side propagator. A spinor field of n nodes is
// 4n packed doubles [re+, im+, re-, im-]; complex arrays are [re, im] pairs.
//
// Every ISA variant must agree with the scalar reference to rounding (FMA
// contraction makes bitwise equality too strict); tests/test_kernels.cpp
// checks each available variant against it.
struct KernelSet {
  const char* name;
  /// amps[j] <- diag(phase_j, conj(phase_j)) * coin * amps[j]; coin is row-major, 8 doubles.
  void (*symbol_step)(double* amps, std::size_t n, const double* coin, const double* phase);
  /// out[j] = |amps[j].plus|^2 + |amps[j].minus|^2
  void (*probability)(const double* amps, std::size_t n, double* out);
  /// amps[j] *= factor[j]
  void (*scale)(double* amps, std::size_t n, const double* factor);
};

const KernelSet& scalar();
/// nullptr when the build or the running CPU lacks AVX2+FMA.
const KernelSet* avx2();
/// nullptr off aarch64.
const KernelSet* neon();

/// Every variant usable on this machine, scalar first.
std::vector<const KernelSet*> available();

/// Best available variant. NQWALK_SIMD=scalar forces the reference kernels.
const KernelSet& active();

void symbol_step(std::span<Spinor> amps, const Mat2& coin, std::span<const cplx> phase,
                 const KernelSet& ks = active());
void probability(std::span<const Spinor> amps, std::span<double> out,
                 const KernelSet& ks = active());
void scale(std::span<Spinor> amps, std::span<const double> factor,
           const KernelSet& ks = active());

}  // namespace nqw::kernels
