#include "nqw/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "nqw/error.hpp"

namespace nqw {
namespace {

constexpr double kDegenerateGap = 1e-10;

double principal(double a) { return std::remainder(a, 2.0 * kPi); }

// Value of `phase` modulo 2 pi closest to `reference`.
double unwrap_near(double phase, double reference) {
  return reference + std::remainder(phase - reference, 2.0 * kPi);
}

double expectation(const Mat2& p, const Spinor& v) {
  const Spinor pv = p * v;
  return (std::conj(v.plus) * pv.plus + std::conj(v.minus) * pv.minus).real();
}

Spinor normalize(Spinor v) {
  const double n = std::sqrt(v.norm_squared());
  v.plus /= n;
  v.minus /= n;
  return v;
}

}  // namespace

MatrixField walk_symbol(const CoinOp& coin, const LatticeGrid& grid, double theta) {
  MatrixField f = shift_symbol(grid, theta);
  for (auto& w : f.values) w = w * coin.matrix();
  return f;
}

LocalEigen unitary_eigen(const Mat2& u) {
  // u = e^{i phi} (a0 + i n.sigma) with e^{2 i phi} = det u.
  const double phi = 0.5 * std::arg(u.det());
  const Mat2 v = std::polar(1.0, -phi) * u;
  const double a0 = 0.5 * (v(0, 0) + v(1, 1)).real();
  const double nz = 0.5 * (v(0, 0) - v(1, 1)).imag();
  const double nx = 0.5 * (v(0, 1) + v(1, 0)).imag();
  const double ny = 0.5 * (v(0, 1) - v(1, 0)).real();
  const double r = std::sqrt(nx * nx + ny * ny + nz * nz);
  const double half_split = std::atan2(r, a0);

  LocalEigen e;
  e.gap = 2.0 * std::abs(std::sin(half_split));
  e.phase = {principal(phi + half_split), principal(phi - half_split)};
  if (r < 1e-300) {
    e.vector = {Spinor::up(), Spinor::down()};
    return e;
  }
  const double x = nx / r, y = ny / r, z = nz / r;
  // Eigenvectors of n.sigma for +1 and -1, picking the better-conditioned column.
  e.vector[0] = z >= 0.0 ? Spinor{cplx{1.0 + z}, cplx{x, y}} : Spinor{cplx{x, -y}, cplx{1.0 - z}};
  e.vector[1] = z <= 0.0 ? Spinor{cplx{1.0 - z}, -cplx{x, y}} : Spinor{cplx{x, -y}, cplx{-1.0 - z}};
  e.vector[0] = normalize(e.vector[0]);
  e.vector[1] = normalize(e.vector[1]);
  return e;
}

Mat2 projector(const Spinor& v) {
  Mat2 p;
  p(0, 0) = v.plus * std::conj(v.plus);
  p(0, 1) = v.plus * std::conj(v.minus);
  p(1, 0) = v.minus * std::conj(v.plus);
  p(1, 1) = v.minus * std::conj(v.minus);
  return p;
}

Mat2 SpectralData::reconstruct(std::size_t j) const {
  return std::polar(1.0, omega[0][j]) * projectors[0][j] +
         std::polar(1.0, omega[1][j]) * projectors[1][j];
}

namespace {

// Continue both branches from node `from` to node `to`.
void continue_branches(SpectralData& s, const LocalEigen& e, std::size_t from, std::size_t to) {
  if (e.gap < kDegenerateGap) {
    for (int k = 0; k < 2; ++k) {
      s.projectors[k][to] = s.projectors[k][from];
      s.omega[k][to] = unwrap_near(e.phase[0], s.omega[k][from]);
    }
    s.degenerate[to] = true;
    return;
  }
  const double o00 = expectation(s.projectors[0][from], e.vector[0]);
  const double o11 = expectation(s.projectors[1][from], e.vector[1]);
  const double o01 = expectation(s.projectors[0][from], e.vector[1]);
  const double o10 = expectation(s.projectors[1][from], e.vector[0]);
  const double keep = o00 + o11;
  const double swap = o01 + o10;
  bool swapped = swap > keep;
  if (std::abs(keep - swap) < 1e-12) {
    auto jump = [&](int k, int src) {
      return std::abs(unwrap_near(e.phase[src], s.omega[k][from]) - s.omega[k][from]);
    };
    swapped = jump(0, 1) + jump(1, 0) < jump(0, 0) + jump(1, 1);
  }
  for (int k = 0; k < 2; ++k) {
    const int src = swapped ? 1 - k : k;
    s.projectors[k][to] = projector(e.vector[src]);
    s.omega[k][to] = unwrap_near(e.phase[src], s.omega[k][from]);
  }
  s.degenerate[to] = false;
}

}  // namespace

SpectralData eigensystem(const MatrixField& field, double theta) {
  const std::size_t m = field.grid.size();
  if (field.values.size() != m)
    throw Error(ErrorKind::InvalidArgument, "matrix field does not match its grid");
  std::vector<LocalEigen> local(m);
  std::size_t anchor = m;
  for (std::size_t j = 0; j < m; ++j) {
    if (unitarity_defect(field.values[j]) > 1e-10)
      throw Error(ErrorKind::InvalidArgument, "walk symbol is not unitary at node " + std::to_string(j));
    local[j] = unitary_eigen(field.values[j]);
    if (anchor == m && local[j].gap >= kDegenerateGap) anchor = j;
  }
  if (anchor == m)
    throw Error(ErrorKind::DegenerateEverywhere, "the two bands coincide on every node");

  SpectralData s;
  s.grid = field.grid;
  s.theta = theta;
  for (int k = 0; k < 2; ++k) {
    s.omega[k].assign(m, 0.0);
    s.projectors[k].assign(m, Mat2{});
  }
  s.degenerate.assign(m, false);

  const LocalEigen& a = local[anchor];
  const int lo = a.phase[0] <= a.phase[1] ? 0 : 1;
  for (int k = 0; k < 2; ++k) {
    const int src = k == 0 ? lo : 1 - lo;
    s.omega[k][anchor] = a.phase[src];
    s.projectors[k][anchor] = projector(a.vector[src]);
  }
  for (std::size_t j = anchor + 1; j < m; ++j) continue_branches(s, local[j], j - 1, j);
  for (std::size_t j = anchor; j-- > 0;) continue_branches(s, local[j], j + 1, j);
  return s;
}

SpectralData group_velocity(SpectralData spec, double tolerance) {
  const std::size_t m = spec.grid.size();
  const Mat2 sz = pauli_z();
  for (int k = 0; k < 2; ++k) {
    spec.velocity[k].assign(m, 0.0);
    for (std::size_t j = 0; j < m; ++j) spec.velocity[k][j] = (sz * spec.projectors[k][j]).trace().real();
  }

  constexpr double h = 1e-4;
  constexpr double skip_gap = 1e-2;
  double worst = 0.0;
  for (std::size_t j = 0; j < m; ++j) {
    if (spec.degenerate[j]) continue;
    const Mat2 w = spec.reconstruct(j);
    if (unitary_eigen(w).gap < skip_gap) continue;
    std::array<std::array<double, 4>, 2> phase{};
    const std::array<double, 4> offsets{h, -h, 2.0 * h, -2.0 * h};
    bool usable = true;
    for (std::size_t o = 0; o < 4 && usable; ++o) {
      const LocalEigen e = unitary_eigen(Mat2::diag(std::polar(1.0, offsets[o]),
                                                    std::polar(1.0, -offsets[o])) * w);
      if (e.gap < skip_gap) {
        usable = false;
        break;
      }
      const int first = expectation(spec.projectors[0][j], e.vector[0]) >=
                                expectation(spec.projectors[0][j], e.vector[1])
                            ? 0
                            : 1;
      for (int k = 0; k < 2; ++k) {
        const int src = k == 0 ? first : 1 - first;
        phase[k][o] = unwrap_near(e.phase[src], spec.omega[k][j]);
      }
    }
    if (!usable) continue;
    for (int k = 0; k < 2; ++k) {
      const double d1 = (phase[k][0] - phase[k][1]) / (2.0 * h);
      const double d2 = (phase[k][2] - phase[k][3]) / (4.0 * h);
      const double richardson = (4.0 * d1 - d2) / 3.0;
      worst = std::max(worst, std::abs(richardson - spec.velocity[k][j]));
    }
  }
  spec.fd_max_deviation = worst;
  if (worst > tolerance)
    throw Error(ErrorKind::DerivativeMismatch,
                "Hellmann-Feynman and finite-difference velocities differ by " + std::to_string(worst));
  return spec;
}

SpectralData analyze(const CoinOp& coin, const LatticeGrid& grid, double theta) {
  return group_velocity(eigensystem(walk_symbol(coin, grid, theta), theta));
}

std::array<std::pair<double, double>, 2> branch_velocities(const Mat2& w, const Mat2& rho00) {
  const LocalEigen e = unitary_eigen(w);
  std::array<std::pair<double, double>, 2> out{};
  for (int k = 0; k < 2; ++k) {
    const Mat2 p = projector(e.vector[k]);
    out[k] = {(pauli_z() * p).trace().real(), (rho00 * p).trace().real()};
  }
  return out;
}

namespace {

// Momentum weights |ghat|^2 Tr(rho00 P_k) on the spectral grid, normalized to 1.
std::array<std::vector<double>, 2> momentum_weights(const SpectralData& spec,
                                                    const OverlapModel& model, const Mat2& rho00) {
  if (!spec.has_velocity())
    throw Error(ErrorKind::InvalidArgument, "group velocities not computed");
  const auto symbol = gram_symbol(model, spec.grid);
  std::array<std::vector<double>, 2> w;
  double total = 0.0;
  for (int k = 0; k < 2; ++k) {
    w[k].resize(spec.grid.size());
    for (std::size_t j = 0; j < spec.grid.size(); ++j) {
      const double tr = std::max(0.0, (rho00 * spec.projectors[k][j]).trace().real());
      w[k][j] = symbol[j] * symbol[j] * tr;
      total += w[k][j];
    }
  }
  if (!(total > 0.0)) throw Error(ErrorKind::InvalidArgument, "initial state has zero weight");
  for (auto& branch : w)
    for (double& v : branch) v /= total;
  return w;
}

}  // namespace

cplx char_function(const SpectralData& spec, const OverlapModel& model, const Mat2& rho00,
                   double lambda) {
  const auto w = momentum_weights(spec, model, rho00);
  cplx c{0.0};
  for (int k = 0; k < 2; ++k)
    for (std::size_t j = 0; j < spec.grid.size(); ++j)
      c += w[k][j] * std::polar(1.0, lambda * spec.velocity[k][j]);
  return c;
}

AsymptoticDistribution asymptotic_distribution(const SpectralData& spec, const OverlapModel& model,
                                               const Mat2& rho00, std::size_t bins) {
  if (bins == 0) throw Error(ErrorKind::InvalidArgument, "bins must be positive");
  const auto w = momentum_weights(spec, model, rho00);
  AsymptoticDistribution d;
  d.edges.resize(bins + 1);
  for (std::size_t b = 0; b <= bins; ++b)
    d.edges[b] = -1.0 + 2.0 * static_cast<double>(b) / static_cast<double>(bins);
  d.masses.assign(bins, 0.0);
  const double width = 2.0 / static_cast<double>(bins);
  auto bin_of = [&](double q) {
    return std::min(bins - 1, static_cast<std::size_t>(std::max(0.0, (q + 1.0) / width)));
  };
  // Spread mass m uniformly over [a, b] in velocity.
  auto deposit = [&](double a, double b, double m) {
    if (a > b) std::swap(a, b);
    if (b - a < 1e-15 * width) {
      d.masses[bin_of(a)] += m;
      return;
    }
    for (std::size_t i = bin_of(a); i <= bin_of(b); ++i) {
      const double cover = std::min(b, d.edges[i + 1]) - std::max(a, d.edges[i]);
      if (cover > 0.0) d.masses[i] += m * cover / (b - a);
    }
  };
  // Each momentum cell maps onto the velocity interval between the midpoints
  // to its neighbours, which removes the aliasing of binning point masses.
  const std::size_t n = spec.grid.size();
  constexpr double kJump = 0.05;
  for (int k = 0; k < 2; ++k) {
    const auto& v = spec.velocity[k];
    for (std::size_t j = 0; j < n; ++j) {
      if (w[k][j] == 0.0) continue;
      const double q = std::clamp(v[j], -1.0, 1.0);
      d.atoms.emplace_back(q, w[k][j]);
      const double prev = v[(j + n - 1) % n], next = v[(j + 1) % n];
      const double lo = std::abs(prev - v[j]) < kJump ? std::clamp(0.5 * (prev + v[j]), -1.0, 1.0) : q;
      const double hi = std::abs(next - v[j]) < kJump ? std::clamp(0.5 * (next + v[j]), -1.0, 1.0) : q;
      deposit(lo, q, 0.5 * w[k][j]);
      deposit(q, hi, 0.5 * w[k][j]);
    }
  }
  return d;
}

double AsymptoticDistribution::mean() const {
  double m = 0.0;
  for (const auto& [q, w] : atoms) m += q * w;
  return m;
}

double AsymptoticDistribution::stddev() const {
  const double mu = mean();
  double v = 0.0;
  for (const auto& [q, w] : atoms) v += (q - mu) * (q - mu) * w;
  return std::sqrt(v);
}

double AsymptoticDistribution::mass_within(double lo, double hi) const {
  double m = 0.0;
  for (const auto& [q, w] : atoms)
    if (q >= lo && q <= hi) m += w;
  return m;
}

std::vector<double> AsymptoticDistribution::modes(double min_mass) const {
  std::vector<double> out;
  const std::size_t n = masses.size();
  for (std::size_t b = 0; b < n; ++b) {
    const double left = b > 0 ? masses[b - 1] : 0.0;
    const double right = b + 1 < n ? masses[b + 1] : 0.0;
    if (masses[b] >= min_mass && masses[b] > left && masses[b] >= right) out.push_back(bin_center(b));
  }
  return out;
}

}  // namespace nqw
