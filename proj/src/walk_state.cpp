#include "nqw/walk_state.hpp"

#include <algorithm>
#include <cmath>

#include "nqw/error.hpp"
#include "nqw/fft.hpp"

namespace nqw {

const char* to_string(BasisTag tag) noexcept {
  return tag == BasisTag::AlphaBasis ? "AlphaBasis" : "OrthonormalBasis";
}

WalkState::WalkState(LatticeGrid grid, BasisTag basis, Representation rep,
                     std::vector<Spinor> amps)
    : grid_(grid), basis_(basis), rep_(rep), amps_(std::move(amps)) {
  if (amps_.size() != grid_.size())
    throw Error(ErrorKind::InvalidArgument, "amplitude count does not match grid size");
}

WalkState WalkState::one_hot(const LatticeGrid& grid, long x, const Spinor& coin,
                             BasisTag basis) {
  std::vector<Spinor> amps(grid.size());
  amps[grid.index(x)] = coin;
  return WalkState(grid, basis, Representation::PositionSide, std::move(amps));
}

WalkState WalkState::with_basis(BasisTag tag) const {
  WalkState s = *this;
  s.basis_ = tag;
  return s;
}

double WalkState::norm_squared() const {
  double n = 0.0;
  for (const auto& s : amps_) n += s.norm_squared();
  if (rep_ == Representation::MomentumSide) n /= static_cast<double>(grid_.size());
  return n;
}

WalkState WalkState::normalized() const {
  const double n = norm_squared();
  if (!(n > 0.0) || !std::isfinite(n))
    throw Error(ErrorKind::InvalidArgument, "cannot normalize a state with zero or non-finite norm");
  WalkState s = *this;
  const double f = 1.0 / std::sqrt(n);
  for (auto& a : s.amps_) {
    a.plus *= f;
    a.minus *= f;
  }
  return s;
}

WalkState WalkState::to_position() const {
  if (rep_ == Representation::PositionSide) return *this;
  WalkState s = *this;
  fft::momentum_to_position(s.amps_);
  s.rep_ = Representation::PositionSide;
  return s;
}

WalkState WalkState::to_momentum() const {
  if (rep_ == Representation::MomentumSide) return *this;
  WalkState s = *this;
  fft::position_to_momentum(s.amps_);
  s.rep_ = Representation::MomentumSide;
  return s;
}

const Spinor& WalkState::at_site(long x) const {
  if (rep_ != Representation::PositionSide)
    throw Error(ErrorKind::InvalidArgument, "at_site requires a position-side state");
  return amps_[grid_.index(x)];
}

double max_amplitude_diff(const WalkState& a, const WalkState& b) {
  if (a.grid() != b.grid() || a.representation() != b.representation())
    throw Error(ErrorKind::InvalidArgument, "states are not comparable");
  double d = 0.0;
  for (std::size_t i = 0; i < a.amplitudes().size(); ++i) {
    d = std::max(d, std::abs(a.amplitudes()[i].plus - b.amplitudes()[i].plus));
    d = std::max(d, std::abs(a.amplitudes()[i].minus - b.amplitudes()[i].minus));
  }
  return d;
}

WalkState random_state(const LatticeGrid& grid, long radius, std::mt19937_64& rng,
                       BasisTag basis) {
  std::normal_distribution<double> n01;
  std::vector<Spinor> amps(grid.size());
  for (long x = -radius; x <= radius; ++x)
    amps[grid.index(x)] = {cplx{n01(rng), n01(rng)}, cplx{n01(rng), n01(rng)}};
  return WalkState(grid, basis, Representation::PositionSide, std::move(amps)).normalized();
}

Mat2 random_unitary(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  std::uniform_real_distribution<double> phase(-kPi, kPi);
  cplx a{n01(rng), n01(rng)};
  cplx b{n01(rng), n01(rng)};
  const double n = std::sqrt(std::norm(a) + std::norm(b));
  a /= n;
  b /= n;
  const cplx g = std::polar(1.0, phase(rng));
  return {{g * a, g * b, -g * std::conj(b), g * std::conj(a)}};
}

Spinor random_spinor(std::mt19937_64& rng) {
  std::normal_distribution<double> n01;
  Spinor s{cplx{n01(rng), n01(rng)}, cplx{n01(rng), n01(rng)}};
  const double n = std::sqrt(s.norm_squared());
  s.plus /= n;
  s.minus /= n;
  return s;
}

}  // namespace nqw
