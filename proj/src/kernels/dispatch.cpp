#include <cstdlib>
#include <string_view>

#include "kernel_impl.hpp"
#include "nqw/error.hpp"
#include "nqw/kernels.hpp"

namespace nqw::kernels {

const KernelSet& scalar() {
  static const KernelSet ks{"scalar", detail::symbol_step_scalar, detail::probability_scalar,
                            detail::scale_scalar};
  return ks;
}

const KernelSet* avx2() {
#if defined(NQW_HAVE_AVX2_KERNELS)
  static const KernelSet ks{"avx2", detail::symbol_step_avx2, detail::probability_avx2,
                            detail::scale_avx2};
  static const bool ok = __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
  return ok ? &ks : nullptr;
#else
  return nullptr;
#endif
}

const KernelSet* neon() {
#if defined(NQW_HAVE_NEON_KERNELS)
  static const KernelSet ks{"neon", detail::symbol_step_neon, detail::probability_neon,
                            detail::scale_neon};
  return &ks;
#else
  return nullptr;
#endif
}

std::vector<const KernelSet*> available() {
  std::vector<const KernelSet*> out{&scalar()};
  if (const auto* k = avx2()) out.push_back(k);
  if (const auto* k = neon()) out.push_back(k);
  return out;
}

const KernelSet& active() {
  static const KernelSet* chosen = [] {
    const char* env = std::getenv("NQWALK_SIMD");
    if (env != nullptr && std::string_view(env) == "scalar") return &scalar();
    if (const auto* k = avx2()) return k;
    if (const auto* k = neon()) return k;
    return &scalar();
  }();
  return *chosen;
}

void symbol_step(std::span<Spinor> amps, const Mat2& coin, std::span<const cplx> phase,
                 const KernelSet& ks) {
  if (phase.size() != amps.size())
    throw Error(ErrorKind::InvalidArgument, "phase table does not match field length");
  ks.symbol_step(reinterpret_cast<double*>(amps.data()), amps.size(),
                 reinterpret_cast<const double*>(coin.a.data()),
                 reinterpret_cast<const double*>(phase.data()));
}

void probability(std::span<const Spinor> amps, std::span<double> out, const KernelSet& ks) {
  if (out.size() != amps.size())
    throw Error(ErrorKind::InvalidArgument, "output length does not match field length");
  ks.probability(reinterpret_cast<const double*>(amps.data()), amps.size(), out.data());
}

void scale(std::span<Spinor> amps, std::span<const double> factor, const KernelSet& ks) {
  if (factor.size() != amps.size())
    throw Error(ErrorKind::InvalidArgument, "factor length does not match field length");
  ks.scale(reinterpret_cast<double*>(amps.data()), amps.size(), factor.data());
}

}  // namespace nqw::kernels
