#include "nqw/core.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nqw/error.hpp"

namespace nqw {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonPositiveSymbol: return "NonPositiveSymbol";
    case ErrorKind::IllConditioned: return "IllConditioned";
    case ErrorKind::BasisMismatch: return "BasisMismatch";
    case ErrorKind::BoundaryOverflow: return "BoundaryOverflow";
    case ErrorKind::DegenerateEverywhere: return "DegenerateEverywhere";
    case ErrorKind::DerivativeMismatch: return "DerivativeMismatch";
    case ErrorKind::NoPeaks: return "NoPeaks";
    case ErrorKind::SigmaZero: return "SigmaZero";
    case ErrorKind::Config: return "Config";
  }
  return "Unknown";
}

Mat2 Mat2::adjoint() const {
  return {{std::conj(a[0]), std::conj(a[2]), std::conj(a[1]), std::conj(a[3])}};
}

Mat2 operator*(const Mat2& x, const Mat2& y) {
  Mat2 r;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) r(i, j) = x(i, 0) * y(0, j) + x(i, 1) * y(1, j);
  return r;
}

Mat2 operator*(cplx s, const Mat2& x) {
  Mat2 r = x;
  for (auto& v : r.a) v *= s;
  return r;
}

Mat2 operator+(const Mat2& x, const Mat2& y) {
  Mat2 r = x;
  for (std::size_t i = 0; i < 4; ++i) r.a[i] += y.a[i];
  return r;
}

Mat2 operator-(const Mat2& x, const Mat2& y) {
  Mat2 r = x;
  for (std::size_t i = 0; i < 4; ++i) r.a[i] -= y.a[i];
  return r;
}

double max_abs_diff(const Mat2& x, const Mat2& y) {
  double d = 0.0;
  for (std::size_t i = 0; i < 4; ++i) d = std::max(d, std::abs(x.a[i] - y.a[i]));
  return d;
}

Mat2 pauli_x() { return {{cplx{0.0}, cplx{1.0}, cplx{1.0}, cplx{0.0}}}; }
Mat2 pauli_y() { return {{cplx{0.0}, cplx{0.0, -1.0}, cplx{0.0, 1.0}, cplx{0.0}}}; }
Mat2 pauli_z() { return Mat2::diag(1.0, -1.0); }

Spinor operator*(const Mat2& m, const Spinor& s) {
  return {m(0, 0) * s.plus + m(0, 1) * s.minus, m(1, 0) * s.plus + m(1, 1) * s.minus};
}

Mat2 density(const Spinor& s) {
  const double n = s.norm_squared();
  if (!(n > 0.0) || !std::isfinite(n))
    throw Error(ErrorKind::InvalidArgument, "coin spinor must have positive finite norm");
  Mat2 r;
  r(0, 0) = s.plus * std::conj(s.plus) / n;
  r(0, 1) = s.plus * std::conj(s.minus) / n;
  r(1, 0) = s.minus * std::conj(s.plus) / n;
  r(1, 1) = s.minus * std::conj(s.minus) / n;
  return r;
}

double unitarity_defect(const Mat2& m) {
  return max_abs_diff(m.adjoint() * m, Mat2::identity());
}

CoinOp::CoinOp(const Mat2& m, double tol) : m_(m) {
  for (const auto& v : m.a)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw Error(ErrorKind::InvalidArgument, "coin has non-finite entries");
  const double d = unitarity_defect(m);
  if (d > tol)
    throw Error(ErrorKind::InvalidArgument, "coin is not unitary (defect " + std::to_string(d) + ")");
}

CoinOp coin_rotation(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  return CoinOp(Mat2{{cplx{c}, cplx{s}, cplx{-s}, cplx{c}}});
}

CoinOp coin_experimental() {
  const double h = 1.0 / std::sqrt(2.0);
  return CoinOp(Mat2{{cplx{h}, cplx{h}, cplx{-h}, cplx{h}}});
}

CoinOp coin_hadamard() {
  const double h = 1.0 / std::sqrt(2.0);
  return CoinOp(Mat2{{cplx{h}, cplx{h}, cplx{h}, cplx{-h}}});
}

CoinOp momentum_shift_op(double theta) {
  if (!std::isfinite(theta)) throw Error(ErrorKind::InvalidArgument, "theta must be finite");
  return CoinOp(Mat2::diag(std::polar(1.0, theta), std::polar(1.0, -theta)));
}

LatticeGrid::LatticeGrid(std::size_t size) : size_(size) {
  if (size == 0 || size % 2 != 0)
    throw Error(ErrorKind::InvalidArgument, "lattice size must be a positive even integer");
}

std::size_t LatticeGrid::index(long x) const {
  const long m = static_cast<long>(size_);
  long i = (x - min_site()) % m;
  if (i < 0) i += m;
  return static_cast<std::size_t>(i);
}

double LatticeGrid::momentum(std::size_t j) const {
  return -kPi + 2.0 * kPi * static_cast<double>(j) / static_cast<double>(size_);
}

LatticeGrid LatticeGrid::for_walk(std::size_t steps, double sigma) {
  const auto tails = static_cast<std::size_t>(6.0 * std::ceil(std::max(sigma, 0.0)));
  const std::size_t need = 2 * (steps + tails) + 64;
  std::size_t m = 2;
  while (m < need) m *= 2;
  return LatticeGrid(m);
}

MatrixField shift_symbol(const LatticeGrid& grid, double theta) {
  MatrixField f{grid, std::vector<Mat2>(grid.size())};
  for (std::size_t j = 0; j < grid.size(); ++j) {
    const double q = grid.momentum(j) + theta;
    f.values[j] = Mat2::diag(std::polar(1.0, q), std::polar(1.0, -q));
  }
  return f;
}

double wrap_angle(double theta) {
  double r = std::fmod(theta, 2.0 * kPi);
  if (r < 0.0) r += 2.0 * kPi;
  if (r >= 2.0 * kPi) r = 0.0;
  return r;
}

}  // namespace nqw
