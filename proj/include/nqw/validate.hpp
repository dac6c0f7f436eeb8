#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace nqw {

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
  double seconds = 0.0;
};

/// Dense check that the conditional shift commutes with Gamma (x) 1.
CheckResult check_shift_gram_commute();
/// Gamma^{-1/2} Gamma^{1/2} = 1 on random states, and the symbol route of
/// Gamma^{+-1/2} against a dense eigen-decomposition (M = 64, sigma <= 2).
CheckResult check_gram_roundtrip(std::uint64_t seed);
/// <dual_x|alpha_y> = delta_xy and <e_x|e_y> = delta_xy via the symbol and
/// the dense route (M <= 64, sigma <= 2).
CheckResult check_dual_basis();
/// Position-side and momentum-side stepping agree for random coins and states.
CheckResult check_backend_equivalence(std::uint64_t seed);
/// |v_k(p)| <= 1 for random coins and offsets.
CheckResult check_causality(std::uint64_t seed);
/// C_E under a constant offset of -pi/2 reproduces C_H for several sigma.
CheckResult check_gauge_equivalence();
/// sigma = 0, spin up at the origin: C_E and C_H give the same distributions.
CheckResult check_orthogonal_degeneracy();
/// Dense alpha-basis pipeline against the momentum-side orthonormal pipeline.
CheckResult check_alpha_pipeline(std::uint64_t seed);
/// Norm preservation over 1000 steps.
CheckResult check_unitarity(std::uint64_t seed);
/// Every available SIMD kernel against the scalar reference.
CheckResult check_simd_kernels(std::uint64_t seed);

std::vector<CheckResult> run_property_suite(std::uint64_t seed = 1);

}  // namespace nqw
