#pragma once

#include <functional>
#include <span>
#include <vector>

#include <json.hpp>

#include "nqw/core.hpp"
#include "nqw/overlap.hpp"
#include "nqw/walk_state.hpp"

namespace nqw {

/// Momentum offset Theta_t applied at step t (1-based), stored modulo 2 pi.
class ShiftSchedule {
 public:
  ShiftSchedule() = default;

  static ShiftSchedule constant(double theta);
  /// values[t-1] for t = 1..n; later steps use `after`.
  static ShiftSchedule per_step(std::vector<double> values, double after = 0.0);

  double at(std::size_t t) const;
  std::size_t explicit_steps() const { return values_.size(); }

 private:
  std::vector<double> values_;
  double after_ = 0.0;
};

/// One step W_theta = S R(theta) C: coin first, then the coin-conditioned
/// shift (|c+> moves to x+1), then the phase R(theta). Works on either
/// representation; the position-side branch is the reference backend.
WalkState step(const WalkState& state, const CoinOp& coin, double theta);

/// Reusable momentum-side propagator; keeps the e^{i p_j} table.
class Propagator {
 public:
  explicit Propagator(const LatticeGrid& grid);

  /// In place on a momentum-side field.
  void apply(std::span<Spinor> field, const CoinOp& coin, double theta) const;

 private:
  std::vector<cplx> phase_;
};

struct TrajectoryRow {
  std::size_t t = 0;
  std::vector<double> probability;  // index = x + M/2
};

struct Trajectory {
  LatticeGrid grid{2};
  nlohmann::json config;
  std::vector<TrajectoryRow> rows;

  const TrajectoryRow& final_row() const { return rows.back(); }
};

struct EvolveOptions {
  std::size_t record_every = 1;
  bool tail_guard = true;
  double tail_fraction = 0.05;
  double tail_limit = 1e-9;
  /// Called on every recorded step with the position-side state and its distribution.
  std::function<void(std::size_t t, const WalkState& position_state, std::span<const double> p)>
      observer;
};

/// Iterates `step` on the momentum side and records the position distribution
/// at t = 0, every record_every steps, and the last step. OrthonormalBasis
/// states are measured directly; AlphaBasis coefficients are measured through
/// the Gram symbol (then `gram` is required). Throws BoundaryOverflow when the
/// outer tail_fraction of sites carries more than tail_limit probability.
Trajectory evolve(const WalkState& state0, const CoinOp& coin, const ShiftSchedule& schedule,
                  std::size_t steps, const EvolveOptions& options = {},
                  const GramOperator* gram = nullptr);

/// P(x) = sum_s |psi_{x,s}|^2 of an orthonormal-basis state; BasisMismatch otherwise.
std::vector<double> position_distribution(const WalkState& state, const GramOperator& gram);
std::vector<double> position_distribution(const WalkState& state);

/// |(Gamma c)_x|^2 normalized, for AlphaBasis coefficients, via the Gram symbol.
std::vector<double> alpha_distribution(const WalkState& alpha_coeffs, const GramOperator& gram);

/// Reference route: P(x) = sum_s |(Gamma c^(s))_x|^2 / sum_{x,s} |(Gamma c^(s))_x|^2
/// with the dense Gram matrix. Needs gram.dense and an AlphaBasis state.
std::vector<double> dense_alpha_distribution(const WalkState& alpha_coeffs, const GramOperator& gram);

/// The denominator Tr(G rho) = sum_{x,s} |(Gamma c^(s))_x|^2 of the dense route.
double dense_alpha_normalization(const WalkState& alpha_coeffs, const GramOperator& gram);

/// Probability in the outer `fraction` of sites at each end.
double tail_mass(std::span<const double> p, double fraction);

/// Convex combination of trajectories recorded on identical steps and grids.
Trajectory mix_trajectories(std::span<const std::pair<double, Trajectory>> parts);

double max_abs_diff(std::span<const double> a, std::span<const double> b);

}  // namespace nqw
