#pragma once

#include <array>
#include <utility>
#include <vector>

#include "nqw/core.hpp"
#include "nqw/overlap.hpp"

namespace nqw {

/// W_theta(p_j) = S(p_j + theta) C on every node.
MatrixField walk_symbol(const CoinOp& coin, const LatticeGrid& grid, double theta);

/// Closed-form eigen-decomposition of one 2x2 unitary.
struct LocalEigen {
  std::array<double, 2> phase{};  ///< principal eigenphases in (-pi, pi]
  std::array<Spinor, 2> vector{};  ///< normalized eigenvectors
  double gap = 0.0;                ///< |lambda_1 - lambda_2|
};

LocalEigen unitary_eigen(const Mat2& u);

/// Projector |v><v| for a normalized vector.
Mat2 projector(const Spinor& v);

/// Dispersion branches omega_k(p_j), spectral projectors P_k(p_j) and, after
/// group_velocity(), the group velocities v_k(p_j).
struct SpectralData {
  LatticeGrid grid{2};
  double theta = 0.0;
  std::array<std::vector<double>, 2> omega;
  std::array<std::vector<Mat2>, 2> projectors;
  std::array<std::vector<double>, 2> velocity;  ///< empty until group_velocity()
  std::vector<bool> degenerate;
  /// Largest Hellmann-Feynman vs. finite-difference disagreement seen by group_velocity().
  double fd_max_deviation = 0.0;

  bool has_velocity() const { return !velocity[0].empty(); }
  /// Sum_k e^{i omega_k} P_k at node j.
  Mat2 reconstruct(std::size_t j) const;
};

/// Branch-continuous eigensystem. Branches are ordered by eigenphase at the
/// first node (p = -pi) and continued by maximal eigenvector overlap;
/// degenerate nodes (gap < 1e-10) inherit the neighbouring projectors.
/// Throws DegenerateEverywhere when no node separates the two bands.
SpectralData eigensystem(const MatrixField& field, double theta = 0.0);

/// Fills velocity with v_k = <psi_k| sigma_z |psi_k> and cross-checks it against
/// Richardson-extrapolated central differences of omega_k away from
/// degeneracies. Throws DerivativeMismatch above `tolerance`.
SpectralData group_velocity(SpectralData spec, double tolerance = 1e-6);

/// eigensystem + group_velocity for W_theta built from `coin`.
SpectralData analyze(const CoinOp& coin, const LatticeGrid& grid, double theta = 0.0);

/// Per-branch (velocity, weight Tr(rho00 P_k)) of a single symbol value W(p).
std::array<std::pair<double, double>, 2> branch_velocities(const Mat2& w, const Mat2& rho00);

/// C(lambda) = int dp Tr(rho~0(p) e^{i lambda V(p)}), rho~0(p) = |ghat(p)|^2 rho00,
/// as a Riemann sum normalized to C(0) = 1.
cplx char_function(const SpectralData& spec, const OverlapModel& model, const Mat2& rho00,
                   double lambda);

/// P_infinity(q) over q in [-1, 1] as the pushforward of the momentum measure
/// through the group velocities.
struct AsymptoticDistribution {
  std::vector<double> edges;   ///< bins + 1 edges
  std::vector<double> masses;  ///< per bin, summing to 1
  /// The exact pushforward atoms (q, mass) the histogram was binned from.
  std::vector<std::pair<double, double>> atoms;

  double mean() const;
  double stddev() const;
  double mass_within(double lo, double hi) const;
  double bin_center(std::size_t b) const { return 0.5 * (edges[b] + edges[b + 1]); }
  /// Bin centers of local maxima of the histogram holding at least `min_mass`.
  std::vector<double> modes(double min_mass = 1e-3) const;
};

AsymptoticDistribution asymptotic_distribution(const SpectralData& spec, const OverlapModel& model,
                                               const Mat2& rho00, std::size_t bins = 401);

}  // namespace nqw
