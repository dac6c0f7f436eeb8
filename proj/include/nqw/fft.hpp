#pragma once

#include <span>

#include "nqw/core.hpp"

namespace nqw::fft {

// Both transforms act in place on a spinor field of even length M, following
// psi(p_j) = sum_x e^{i p_j x} psi_x with x = index - M/2, p_j = -pi + 2 pi j/M.
// momentum_to_position includes the 1/M factor, so the pair is an exact inverse.

void position_to_momentum(std::span<Spinor> field);
void momentum_to_position(std::span<Spinor> field);

}  // namespace nqw::fft
