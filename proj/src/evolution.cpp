#include "nqw/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>

#include "nqw/error.hpp"
#include "nqw/fft.hpp"
#include "nqw/kernels.hpp"

namespace nqw {

ShiftSchedule ShiftSchedule::constant(double theta) {
  if (!std::isfinite(theta)) throw Error(ErrorKind::InvalidArgument, "theta must be finite");
  ShiftSchedule s;
  s.after_ = wrap_angle(theta);
  return s;
}

ShiftSchedule ShiftSchedule::per_step(std::vector<double> values, double after) {
  ShiftSchedule s;
  for (double& v : values) {
    if (!std::isfinite(v)) throw Error(ErrorKind::InvalidArgument, "schedule values must be finite");
    v = wrap_angle(v);
  }
  if (!std::isfinite(after)) throw Error(ErrorKind::InvalidArgument, "schedule values must be finite");
  s.values_ = std::move(values);
  s.after_ = wrap_angle(after);
  return s;
}

double ShiftSchedule::at(std::size_t t) const {
  if (t >= 1 && t <= values_.size()) return values_[t - 1];
  return after_;
}

Propagator::Propagator(const LatticeGrid& grid) : phase_(grid.size()) {
  for (std::size_t j = 0; j < grid.size(); ++j) phase_[j] = std::polar(1.0, grid.momentum(j));
}

void Propagator::apply(std::span<Spinor> field, const CoinOp& coin, double theta) const {
  // S(p + theta) C = S(p) (R(theta) C): fold the node-independent phase into the coin.
  const Mat2 folded = momentum_shift_op(theta).matrix() * coin.matrix();
  kernels::symbol_step(field, folded, phase_);
}

namespace {

WalkState step_position_side(const WalkState& state, const CoinOp& coin, double theta) {
  const auto& grid = state.grid();
  const std::size_t m = grid.size();
  const auto in = state.amplitudes();
  std::vector<Spinor> out(m);
  const cplx up = std::polar(1.0, theta);
  const cplx down = std::polar(1.0, -theta);
  for (std::size_t i = 0; i < m; ++i) {
    const Spinor c = coin.matrix() * in[i];
    out[(i + 1) % m].plus = up * c.plus;
    out[(i + m - 1) % m].minus = down * c.minus;
  }
  return WalkState(grid, state.basis(), Representation::PositionSide, std::move(out));
}

std::vector<double> squared_moduli(const WalkState& position_state) {
  std::vector<double> p(position_state.grid().size());
  kernels::probability(position_state.amplitudes(), p);
  return p;
}

}  // namespace

WalkState step(const WalkState& state, const CoinOp& coin, double theta) {
  if (state.representation() == Representation::PositionSide)
    return step_position_side(state, coin, theta);
  WalkState out = state;
  Propagator(state.grid()).apply(out.amplitudes(), coin, theta);
  return out;
}

std::vector<double> position_distribution(const WalkState& state) {
  if (state.basis() != BasisTag::OrthonormalBasis)
    throw Error(ErrorKind::BasisMismatch, "position_distribution needs an orthonormal-basis state");
  return squared_moduli(state.to_position());
}

std::vector<double> position_distribution(const WalkState& state, const GramOperator& gram) {
  if (state.grid() != gram.grid)
    throw Error(ErrorKind::InvalidArgument, "state grid does not match Gram grid");
  return position_distribution(state);
}

std::vector<double> alpha_distribution(const WalkState& alpha_coeffs, const GramOperator& gram) {
  if (alpha_coeffs.basis() != BasisTag::AlphaBasis)
    throw Error(ErrorKind::BasisMismatch, "alpha_distribution needs AlphaBasis coefficients");
  const WalkState transformed = gram_power_apply(gram, 1.0, alpha_coeffs).state;
  auto p = squared_moduli(transformed.to_position());
  double total = 0.0;
  for (double v : p) total += v;
  for (double& v : p) v /= total;
  return p;
}

namespace {

Eigen::MatrixXcd gram_times_coeffs(const WalkState& alpha_coeffs, const GramOperator& gram) {
  if (alpha_coeffs.basis() != BasisTag::AlphaBasis)
    throw Error(ErrorKind::BasisMismatch, "dense route needs AlphaBasis coefficients");
  if (!gram.dense) throw Error(ErrorKind::InvalidArgument, "dense Gram matrix not materialized");
  if (alpha_coeffs.grid() != gram.grid)
    throw Error(ErrorKind::InvalidArgument, "state grid does not match Gram grid");
  const WalkState pos = alpha_coeffs.to_position();
  const auto m = static_cast<Eigen::Index>(pos.grid().size());
  Eigen::MatrixXcd c(m, 2);
  for (Eigen::Index i = 0; i < m; ++i) {
    c(i, 0) = pos.amplitudes()[static_cast<std::size_t>(i)].plus;
    c(i, 1) = pos.amplitudes()[static_cast<std::size_t>(i)].minus;
  }
  return gram.dense->cast<cplx>() * c;
}

}  // namespace

std::vector<double> dense_alpha_distribution(const WalkState& alpha_coeffs, const GramOperator& gram) {
  const Eigen::MatrixXcd gc = gram_times_coeffs(alpha_coeffs, gram);
  const double total = gc.squaredNorm();
  std::vector<double> p(static_cast<std::size_t>(gc.rows()));
  for (Eigen::Index i = 0; i < gc.rows(); ++i)
    p[static_cast<std::size_t>(i)] = (std::norm(gc(i, 0)) + std::norm(gc(i, 1))) / total;
  return p;
}

double dense_alpha_normalization(const WalkState& alpha_coeffs, const GramOperator& gram) {
  return gram_times_coeffs(alpha_coeffs, gram).squaredNorm();
}

double tail_mass(std::span<const double> p, double fraction) {
  const auto edge = static_cast<std::size_t>(std::ceil(fraction * static_cast<double>(p.size())));
  double mass = 0.0;
  for (std::size_t i = 0; i < std::min(edge, p.size()); ++i) mass += p[i] + p[p.size() - 1 - i];
  return mass;
}

Trajectory evolve(const WalkState& state0, const CoinOp& coin, const ShiftSchedule& schedule,
                  std::size_t steps, const EvolveOptions& options, const GramOperator* gram) {
  if (options.record_every == 0)
    throw Error(ErrorKind::InvalidArgument, "record_every must be positive");
  const bool alpha = state0.basis() == BasisTag::AlphaBasis;
  if (alpha && gram == nullptr)
    throw Error(ErrorKind::BasisMismatch, "AlphaBasis evolution needs a Gram operator to measure");

  Trajectory traj;
  traj.grid = state0.grid();
  const Propagator propagator(state0.grid());
  WalkState state = state0.to_momentum();

  auto record = [&](std::size_t t) {
    const WalkState measured = alpha ? gram_power_apply(*gram, 1.0, state).state : state;
    const WalkState pos = measured.to_position();
    std::vector<double> p = squared_moduli(pos);
    if (alpha) {
      double total = 0.0;
      for (double v : p) total += v;
      for (double& v : p) v /= total;
    }
    if (options.tail_guard) {
      const double tail = tail_mass(p, options.tail_fraction);
      if (tail > options.tail_limit) {
        char msg[128];
        std::snprintf(msg, sizeof msg, "tail mass %.3g at t = %zu exceeds %.3g; enlarge the grid",
                      tail, t, options.tail_limit);
        throw Error(ErrorKind::BoundaryOverflow, msg);
      }
    }
    if (options.observer) {
      // Observers see the evolved state in its own basis.
      options.observer(t, alpha ? state.to_position() : pos, p);
    }
    traj.rows.push_back({t, std::move(p)});
  };

  record(0);
  for (std::size_t t = 1; t <= steps; ++t) {
    propagator.apply(state.amplitudes(), coin, schedule.at(t));
    if (t % options.record_every == 0 || t == steps) record(t);
  }
  return traj;
}

Trajectory mix_trajectories(std::span<const std::pair<double, Trajectory>> parts) {
  if (parts.empty()) throw Error(ErrorKind::InvalidArgument, "nothing to mix");
  double wsum = 0.0;
  for (const auto& [w, tr] : parts) {
    if (w < 0.0) throw Error(ErrorKind::InvalidArgument, "mixture weights must be nonnegative");
    wsum += w;
  }
  Trajectory out = parts.front().second;
  for (auto& row : out.rows) std::fill(row.probability.begin(), row.probability.end(), 0.0);
  for (const auto& [w, tr] : parts) {
    if (tr.rows.size() != out.rows.size() || tr.grid != out.grid)
      throw Error(ErrorKind::InvalidArgument, "mixed trajectories must share grid and steps");
    for (std::size_t r = 0; r < out.rows.size(); ++r) {
      if (tr.rows[r].t != out.rows[r].t)
        throw Error(ErrorKind::InvalidArgument, "mixed trajectories must share recorded steps");
      for (std::size_t i = 0; i < out.rows[r].probability.size(); ++i)
        out.rows[r].probability[i] += (w / wsum) * tr.rows[r].probability[i];
    }
  }
  return out;
}

double max_abs_diff(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw Error(ErrorKind::InvalidArgument, "length mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
  return d;
}

}  // namespace nqw
