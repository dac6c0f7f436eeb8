#pragma once

#include <random>
#include <span>
#include <vector>

#include "nqw/core.hpp"

namespace nqw {

/// Which basis the amplitudes are coordinates in.
enum class BasisTag {
  AlphaBasis,        ///< coefficients c_x of sum_x c_x |alpha_x> (x) spinor
  OrthonormalBasis,  ///< coordinates in |e_x> = Gamma^{-1/2} |alpha_x>
};

enum class Representation { PositionSide, MomentumSide };

const char* to_string(BasisTag tag) noexcept;

/// Amplitude field over a periodic lattice times the coin space.
///
/// Position side stores site x at index x + M/2. Momentum side stores
/// psi(p_j) = sum_x e^{i p_j x} psi_x at index j, so the position-side norm
/// equals (1/M) times the plain momentum-side sum of squares.
class WalkState {
 public:
  WalkState(LatticeGrid grid, BasisTag basis, Representation rep, std::vector<Spinor> amps);

  static WalkState one_hot(const LatticeGrid& grid, long x, const Spinor& coin,
                           BasisTag basis = BasisTag::OrthonormalBasis);

  const LatticeGrid& grid() const { return grid_; }
  BasisTag basis() const { return basis_; }
  Representation representation() const { return rep_; }
  std::span<const Spinor> amplitudes() const { return amps_; }
  std::span<Spinor> amplitudes() { return amps_; }

  WalkState with_basis(BasisTag tag) const;

  /// Position-side norm sum_{x,s} |psi_{x,s}|^2 regardless of representation.
  double norm_squared() const;
  WalkState normalized() const;

  WalkState to_position() const;
  WalkState to_momentum() const;

  /// Amplitude at site x (position side only).
  const Spinor& at_site(long x) const;

 private:
  LatticeGrid grid_;
  BasisTag basis_;
  Representation rep_;
  std::vector<Spinor> amps_;
};

/// Largest |a - b| over all amplitude components; representations must match.
double max_amplitude_diff(const WalkState& a, const WalkState& b);

/// Normalized state with i.i.d. complex Gaussian amplitudes on sites |x| <= radius.
WalkState random_state(const LatticeGrid& grid, long radius, std::mt19937_64& rng,
                       BasisTag basis = BasisTag::OrthonormalBasis);

/// Haar-random 2x2 unitary.
Mat2 random_unitary(std::mt19937_64& rng);

Spinor random_spinor(std::mt19937_64& rng);

}  // namespace nqw
