#include "nqw/overlap.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nqw/error.hpp"
#include "nqw/kernels.hpp"

namespace nqw {

OverlapModel::OverlapModel(std::optional<double> sigma, double tail_eps, std::vector<double> table)
    : sigma_(sigma), tail_eps_(tail_eps), table_(std::move(table)) {}

OverlapModel OverlapModel::gaussian(double sigma, double tail_eps) {
  if (!(sigma >= 0.0) || !std::isfinite(sigma))
    throw Error(ErrorKind::InvalidArgument, "sigma must be finite and >= 0");
  if (!(tail_eps > 0.0) || tail_eps >= 1.0)
    throw Error(ErrorKind::InvalidArgument, "tail_eps must lie in (0, 1)");
  if (sigma == 0.0) return OverlapModel(0.0, tail_eps, {1.0});
  // exp(-K^2/sigma^2) < eps  <=>  K > sigma sqrt(-ln eps)
  long k_max = static_cast<long>(std::floor(sigma * std::sqrt(-std::log(tail_eps))));
  while (std::exp(-static_cast<double>(k_max * k_max) / (sigma * sigma)) >= tail_eps) ++k_max;
  while (k_max > 0 &&
         std::exp(-static_cast<double>((k_max - 1) * (k_max - 1)) / (sigma * sigma)) < tail_eps)
    --k_max;
  std::vector<double> table(static_cast<std::size_t>(k_max) + 1);
  for (long k = 0; k <= k_max; ++k)
    table[static_cast<std::size_t>(k)] = std::exp(-static_cast<double>(k * k) / (sigma * sigma));
  return OverlapModel(sigma, tail_eps, std::move(table));
}

OverlapModel OverlapModel::from_table(std::vector<double> g) {
  if (g.empty() || g.front() != 1.0)
    throw Error(ErrorKind::InvalidArgument, "overlap table must start with g(0) = 1");
  for (double v : g)
    if (!std::isfinite(v) || std::abs(v) > 1.0)
      throw Error(ErrorKind::InvalidArgument, "overlap values must be finite with |g| <= 1");
  return OverlapModel(std::nullopt, 0.0, std::move(g));
}

double OverlapModel::operator()(long k) const {
  const auto a = static_cast<std::size_t>(std::labs(k));
  return a < table_.size() ? table_[a] : 0.0;
}

double OverlapModel::phase_space_step() const {
  if (!sigma_ || *sigma_ == 0.0)
    throw Error(ErrorKind::SigmaZero, "phase-space step needs sigma > 0");
  return std::sqrt(2.0) / *sigma_;
}

double overlap(long k, const OverlapModel& model) { return model(k); }

std::vector<double> gram_symbol(const OverlapModel& model, const LatticeGrid& grid) {
  const long band = model.band();
  std::vector<double> out(grid.size());
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double p = grid.momentum(j);
    cplx s{0.0};
    for (long k = -band; k <= band; ++k) s += model(k) * std::polar(1.0, p * static_cast<double>(k));
    if (std::abs(s.imag()) >= 1e-12)
      throw Error(ErrorKind::NonPositiveSymbol, "symbol has imaginary residue; overlap not even");
    double v = s.real();
    if (v < -1e-12)
      throw Error(ErrorKind::NonPositiveSymbol,
                  "symbol value " + std::to_string(v) + " at p = " + std::to_string(p));
    out[j] = std::max(v, 0.0);
  }
  return out;
}

GramOperator make_gram(const OverlapModel& model, const LatticeGrid& grid) {
  return GramOperator{model, grid, gram_symbol(model, grid), std::nullopt, true};
}

GramOperator gram_dense(const OverlapModel& model, const LatticeGrid& grid, bool circulant) {
  GramOperator g = make_gram(model, grid);
  const auto m = static_cast<long>(grid.size());
  const long band = model.band();
  Eigen::MatrixXd dense = Eigen::MatrixXd::Zero(m, m);
  for (long i = 0; i < m; ++i) {
    for (long d = -band; d <= band; ++d) {
      const long j = i + d;
      if (circulant) {
        dense(i, ((j % m) + m) % m) += model(d);
      } else if (j >= 0 && j < m) {
        dense(i, j) = model(d);
      }
    }
  }
  g.dense = std::move(dense);
  g.circulant = circulant;
  return g;
}

namespace {

bool allowed_exponent(double e) {
  for (double a : {-1.0, -0.5, 0.5, 1.0, 2.0})
    if (e == a) return true;
  return false;
}

}  // namespace

GramApplyResult gram_power_apply(const GramOperator& gram, double exponent,
                                 const WalkState& state, double floor_eps) {
  if (!allowed_exponent(exponent))
    throw Error(ErrorKind::InvalidArgument, "gram exponent must be one of -1, -1/2, 1/2, 1, 2");
  if (state.grid() != gram.grid)
    throw Error(ErrorKind::InvalidArgument, "state grid does not match Gram grid");

  bool ill = false;
  std::vector<double> factor(gram.symbol.size());
  for (std::size_t j = 0; j < factor.size(); ++j) {
    double s = gram.symbol[j];
    if (exponent < 0.0 && s < floor_eps) {
      ill = true;
      s = floor_eps;
    }
    factor[j] = std::pow(s, exponent);
  }

  WalkState out = state.to_momentum();
  kernels::scale(out.amplitudes(), factor);
  if (exponent > 0.0 && state.basis() == BasisTag::AlphaBasis)
    out = out.with_basis(BasisTag::OrthonormalBasis);
  else if (exponent < 0.0 && state.basis() == BasisTag::OrthonormalBasis)
    out = out.with_basis(BasisTag::AlphaBasis);
  if (state.representation() == Representation::PositionSide) out = out.to_position();
  return {std::move(out), ill};
}

WalkState initial_state(const OverlapModel& model, const LatticeGrid& grid, const Spinor& coin) {
  if (!(coin.norm_squared() > 0.0))
    throw Error(ErrorKind::InvalidArgument, "coin spinor must have positive norm");
  const auto symbol = gram_symbol(model, grid);
  std::vector<Spinor> amps(grid.size());
  for (std::size_t j = 0; j < amps.size(); ++j)
    amps[j] = {symbol[j] * coin.plus, symbol[j] * coin.minus};
  return WalkState(grid, BasisTag::OrthonormalBasis, Representation::MomentumSide, std::move(amps))
      .normalized();
}

}  // namespace nqw
