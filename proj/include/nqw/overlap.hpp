#pragma once

#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "nqw/core.hpp"
#include "nqw/walk_state.hpp"

namespace nqw {

/// Overlap function g(k) = <alpha_x|alpha_{x+k}> of a translation-invariant
/// non-orthogonal basis, truncated to the band |k| <= K.
class OverlapModel {
 public:
  /// g(k) = exp(-k^2/sigma^2); sigma = 0 is the orthogonal basis g(k) = delta_{k0}.
  /// K is the smallest integer with g(K) < tail_eps; terms beyond K are dropped.
  static OverlapModel gaussian(double sigma, double tail_eps = 1e-14);

  /// General real, even overlap given as g(0), g(1), ..., g(K); g(0) must be 1.
  /// Such a model has no width parameter, so phase-space helpers reject it.
  static OverlapModel from_table(std::vector<double> g);

  double operator()(long k) const;

  /// Width parameter; empty for table models.
  std::optional<double> sigma() const { return sigma_; }
  double tail_eps() const { return tail_eps_; }
  long band() const { return static_cast<long>(table_.size()) - 1; }
  bool orthogonal() const { return band() == 0; }

  /// Phase-space step sqrt(2)/sigma; throws SigmaZero when undefined.
  double phase_space_step() const;

 private:
  OverlapModel(std::optional<double> sigma, double tail_eps, std::vector<double> table);

  std::optional<double> sigma_;
  double tail_eps_;
  std::vector<double> table_;  // g(0..K)
};

double overlap(long k, const OverlapModel& model);

/// Symbol ghat(p_j) = sum_{|k|<=K} g(k) e^{i p_j k} of the Gram operator on the grid.
/// Clamps values in (-1e-12, 0) to 0; throws NonPositiveSymbol below -1e-12.
std::vector<double> gram_symbol(const OverlapModel& model, const LatticeGrid& grid);

/// Gram operator Gamma = sum_x |alpha_x><alpha_x|, entries Gamma_xy = g(y - x).
struct GramOperator {
  OverlapModel model;
  LatticeGrid grid;
  std::vector<double> symbol;
  /// Dense M x M matrix, materialized only by gram_dense().
  std::optional<Eigen::MatrixXd> dense;
  bool circulant = true;
};

/// Symbol-only operator (the production path).
GramOperator make_gram(const OverlapModel& model, const LatticeGrid& grid);

/// Dense Toeplitz matrix. With `circulant` distances wrap modulo M (periodic
/// images summed), so its spectrum is exactly the symbol on the grid.
GramOperator gram_dense(const OverlapModel& model, const LatticeGrid& grid, bool circulant);

struct GramApplyResult {
  WalkState state;
  /// Set when a negative power met min_j ghat(p_j) < floor_eps and was regularized.
  bool ill_conditioned = false;
};

/// Applies (Gamma (x) 1)^exponent, exponent in {-1, -1/2, 1/2, 1, 2}, as a
/// multiplication in momentum space. Negative powers use max(ghat, floor_eps).
///
/// Tags follow coordinates: a positive power applied to AlphaBasis
/// coefficients yields OrthonormalBasis coordinates (+1/2 is the change of
/// coordinates, +1 the transformed state G rho G); a negative power applied
/// to OrthonormalBasis coordinates maps back. Other combinations keep the tag.
/// The result has the representation of the input.
GramApplyResult gram_power_apply(const GramOperator& gram, double exponent,
                                 const WalkState& state, double floor_eps = 1e-12);

/// Orthonormal-basis initial state: psi(p_j) = ghat(p_j) coin, normalized.
/// Equals G (|e_0> (x) coin) up to normalization. Returned momentum side.
WalkState initial_state(const OverlapModel& model, const LatticeGrid& grid, const Spinor& coin);

}  // namespace nqw
