#include "nqw/observables.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nqw/error.hpp"
#include "nqw/parallel.hpp"

namespace nqw {

LatticeGrid WalkConfig::grid() const {
  return grid_size != 0 ? LatticeGrid(grid_size) : LatticeGrid::for_walk(steps, sigma);
}

BlochConfig BlochConfig::reference() {
  BlochConfig c;
  c.walk.coin = coin_hadamard();
  c.walk.sigma = 14.0;
  c.walk.steps = 100;
  c.delta_theta = kPi / 10.0;
  c.t_on = 20;
  c.t_off = 65;
  return c;
}

void BlochConfig::validate() const {
  if (!std::isfinite(delta_theta))
    throw Error(ErrorKind::InvalidArgument, "delta_theta must be finite");
  if (!(t_on <= t_off && t_off <= walk.steps))
    throw Error(ErrorKind::InvalidArgument, "need 0 <= t_on <= t_off <= steps");
}

ShiftSchedule bloch_schedule(const BlochConfig& cfg) {
  cfg.validate();
  std::vector<double> values(cfg.walk.steps, 0.0);
  double last = 0.0;
  for (std::size_t t = cfg.t_on; t < cfg.t_off; ++t) {
    if (t == 0) continue;  // steps are 1-based
    last = static_cast<double>(t - cfg.t_on + 1) * cfg.delta_theta;
    values[t - 1] = last;
  }
  const double after = cfg.mode == SwitchOffMode::Freeze && cfg.t_off > cfg.t_on ? last : 0.0;
  for (std::size_t t = std::max<std::size_t>(cfg.t_off, 1); t <= cfg.walk.steps; ++t)
    values[t - 1] = after;
  return ShiftSchedule::per_step(std::move(values), after);
}

namespace {

// Centroid over the window [x - w - 1/2, x + w + 1/2] with fractional edge
// cells, re-centred until it stops moving. Avoids the pull towards the
// integer maximum that a fixed window has.
Peak refine_centroid(std::span<const double> dist, double start, double w) {
  const auto n = static_cast<long>(dist.size());
  double x = start;
  Peak out{start, 0.0};
  for (int iter = 0; iter < 64; ++iter) {
    const double lo = x - w - 0.5, hi = x + w + 0.5;
    const long k0 = std::max(0L, static_cast<long>(std::floor(lo + 0.5)));
    const long k1 = std::min(n - 1, static_cast<long>(std::ceil(hi - 0.5)));
    double mass = 0.0, moment = 0.0;
    for (long k = k0; k <= k1; ++k) {
      const double kk = static_cast<double>(k);
      const double cover = std::min(kk + 0.5, hi) - std::max(kk - 0.5, lo);
      if (cover <= 0.0) continue;
      const double m = dist[static_cast<std::size_t>(k)] * std::min(cover, 1.0);
      mass += m;
      moment += m * kk;
    }
    out.mass = mass;
    if (!(mass > 0.0)) return out;
    const double next = moment / mass;
    const bool done = std::abs(next - x) < 1e-10;
    // Stay inside the basin of the detected maximum.
    x = std::clamp(next, start - w, start + w);
    out.position = x;
    if (done) break;
  }
  return out;
}

}  // namespace

std::vector<Peak> track_peaks(std::span<const double> dist, double min_mass, std::size_t window) {
  const std::size_t n = dist.size();
  if (n == 0) throw Error(ErrorKind::NoPeaks, "empty distribution");
  if (window == 0) window = 1;
  const std::size_t half = window / 2;
  const long origin = static_cast<long>(n / 2);

  std::vector<double> smooth(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(n - 1, i + half);
    double s = 0.0;
    for (std::size_t k = lo; k <= hi; ++k) s += dist[k];
    smooth[i] = s / static_cast<double>(hi - lo + 1);
  }

  struct Candidate {
    double height;
    Peak peak;
  };
  std::vector<Candidate> found;
  for (std::size_t i = 0; i < n;) {
    std::size_t j = i;
    while (j + 1 < n && smooth[j + 1] == smooth[i]) ++j;
    const bool has_left = i > 0;
    const bool has_right = j + 1 < n;
    const bool left_ok = !has_left || smooth[i - 1] < smooth[i];
    const bool right_ok = !has_right || smooth[j + 1] < smooth[i];
    if ((has_left || has_right) && left_ok && right_ok) {
      const auto c = static_cast<double>(i + j) / 2.0;
      const Peak refined = refine_centroid(dist, c, static_cast<double>(window));
      if (refined.mass >= min_mass && refined.mass > 0.0)
        found.push_back({smooth[i], {refined.position - static_cast<double>(origin), refined.mass}});
    }
    i = j + 1;
  }

  std::sort(found.begin(), found.end(),
            [](const Candidate& a, const Candidate& b) { return a.height > b.height; });
  std::vector<Peak> peaks;
  for (const auto& cand : found) {
    const bool close = std::any_of(peaks.begin(), peaks.end(), [&](const Peak& p) {
      return std::abs(p.position - cand.peak.position) < static_cast<double>(window);
    });
    if (!close) peaks.push_back(cand.peak);
  }
  if (peaks.empty()) throw Error(ErrorKind::NoPeaks, "no peak reaches the minimum mass");
  std::sort(peaks.begin(), peaks.end(),
            [](const Peak& a, const Peak& b) { return a.position < b.position; });
  return peaks;
}

PhaseSpaceMap PhaseSpaceMap::from_model(const OverlapModel& model, double origin) {
  return PhaseSpaceMap{model.phase_space_step(), origin};
}

double occupation_expectation(const WalkState& alpha_coeffs, const OverlapModel& model,
                              const PhaseSpaceMap& map) {
  if (!model.sigma() || *model.sigma() == 0.0)
    throw Error(ErrorKind::SigmaZero, "occupation number needs sigma > 0");
  if (alpha_coeffs.basis() != BasisTag::AlphaBasis)
    throw Error(ErrorKind::BasisMismatch, "occupation_expectation needs AlphaBasis coefficients");
  const WalkState pos = alpha_coeffs.to_position();
  const auto& grid = pos.grid();
  const auto c = pos.amplitudes();
  const long band = model.band();
  const auto m = static_cast<long>(grid.size());
  double num = 0.0, den = 0.0;
  for (long i = 0; i < m; ++i) {
    const Spinor& ci = c[static_cast<std::size_t>(i)];
    if (ci.norm_squared() == 0.0) continue;
    const double ai = map.alpha(grid.site(static_cast<std::size_t>(i)));
    for (long d = -band; d <= band; ++d) {
      const long j = i + d;
      if (j < 0 || j >= m) continue;
      const Spinor& cj = c[static_cast<std::size_t>(j)];
      const double g = model(d);
      const double overlap =
          (std::conj(ci.plus) * cj.plus + std::conj(ci.minus) * cj.minus).real() * g;
      den += overlap;
      num += overlap * ai * map.alpha(grid.site(static_cast<std::size_t>(j)));
    }
  }
  return num / den;
}

double occupation_expectation(const WalkState& alpha_coeffs, const GramOperator& gram,
                              const PhaseSpaceMap& map) {
  return occupation_expectation(alpha_coeffs, gram.model, map);
}

BlochRun run_bloch(const BlochConfig& cfg) {
  cfg.validate();
  const LatticeGrid grid = cfg.walk.grid();
  const OverlapModel model = OverlapModel::gaussian(cfg.walk.sigma);
  const GramOperator gram = make_gram(model, grid);
  const double norm = std::sqrt(cfg.walk.rho00.norm_squared());
  const Spinor coin{cfg.walk.rho00.plus / norm, cfg.walk.rho00.minus / norm};
  const WalkState c0 = WalkState::one_hot(grid, 0, coin, BasisTag::AlphaBasis);
  const bool has_map = cfg.walk.sigma > 0.0;
  const PhaseSpaceMap map = has_map ? PhaseSpaceMap::from_model(model, cfg.origin) : PhaseSpaceMap{};

  BlochRun run;
  run.schedule = bloch_schedule(cfg);
  EvolveOptions opts;
  opts.observer = [&](std::size_t, const WalkState& alpha_pos, std::span<const double> p) {
    try {
      run.peaks.push_back(track_peaks(p));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoPeaks) throw;
      run.peaks.emplace_back();
    }
    run.occupation.push_back(has_map ? occupation_expectation(alpha_pos, model, map)
                                     : std::numeric_limits<double>::quiet_NaN());
    run.final_alpha = alpha_pos;
  };
  run.trajectory = evolve(c0, cfg.walk.coin, run.schedule, cfg.walk.steps, opts, &gram);
  return run;
}

std::vector<std::optional<double>> peak_series(const BlochRun& run, bool rightmost) {
  std::vector<std::optional<double>> out;
  out.reserve(run.peaks.size());
  for (const auto& row : run.peaks) {
    if (row.empty())
      out.emplace_back();
    else
      out.emplace_back(rightmost ? row.back().position : row.front().position);
  }
  return out;
}

std::optional<std::size_t> estimate_period(std::span<const double> x, std::size_t min_lag) {
  const std::size_t n = x.size();
  if (n < 2 * min_lag + 2) return std::nullopt;
  const std::size_t max_lag = n > 20 ? n - 10 : n / 2;
  std::vector<double> d(max_lag + 2, 0.0);
  for (std::size_t lag = 1; lag <= max_lag + 1 && lag < n; ++lag) {
    double s = 0.0;
    for (std::size_t t = 0; t + lag < n; ++t) s += (x[t + lag] - x[t]) * (x[t + lag] - x[t]);
    d[lag] = s / static_cast<double>(n - lag);
  }
  const double top = *std::max_element(d.begin(), d.end());
  for (std::size_t lag = std::max<std::size_t>(min_lag, 2); lag <= max_lag; ++lag)
    if (d[lag] <= d[lag - 1] && d[lag] <= d[lag + 1] && d[lag] < 0.2 * top) return lag;
  return std::nullopt;
}

std::optional<std::size_t> bloch_period(const BlochRun& run, const BlochConfig& cfg) {
  std::vector<double> ts, xs;
  for (std::size_t i = 0; i < run.peaks.size(); ++i) {
    const std::size_t t = run.trajectory.rows[i].t;
    if (t < cfg.t_on || t >= cfg.t_off) continue;
    const Peak* best = nullptr;
    for (const Peak& p : run.peaks[i])
      if (p.position > 0.0 && (!best || p.mass > best->mass)) best = &p;
    if (!best) continue;
    ts.push_back(static_cast<double>(t));
    xs.push_back(best->position);
  }
  if (ts.size() < 2) return std::nullopt;
  const double k = fit_slope(ts, xs);
  for (std::size_t i = 0; i < xs.size(); ++i) xs[i] -= k * ts[i];
  return estimate_period(xs);
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size() || x.size() < 2)
    throw Error(ErrorKind::InvalidArgument, "slope fit needs two or more matched points");
  const double n = static_cast<double>(x.size());
  const double mx = std::accumulate(x.begin(), x.end(), 0.0) / n;
  const double my = std::accumulate(y.begin(), y.end(), 0.0) / n;
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sxy += (x[i] - mx) * (y[i] - my);
    sxx += (x[i] - mx) * (x[i] - mx);
  }
  return sxy / sxx;
}

namespace {

ProbeResult probe_one(const CoinOp& coin, const OverlapModel& model, double theta,
                      const ProbeOptions& options) {
  const LatticeGrid grid = LatticeGrid::for_walk(
      options.steps, model.sigma().value_or(static_cast<double>(model.band()) / 6.0));
  const WalkState psi0 = initial_state(model, grid, options.rho00);
  const Trajectory traj = evolve(psi0, coin, ShiftSchedule::constant(theta), options.steps);

  const auto first = static_cast<std::size_t>(std::ceil(0.75 * static_cast<double>(options.steps)));
  std::vector<double> ts;
  std::vector<std::vector<Peak>> rows;
  for (const auto& row : traj.rows) {
    if (row.t < first) continue;
    try {
      rows.push_back(track_peaks(row.probability, options.min_mass, options.window));
      ts.push_back(static_cast<double>(row.t));
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::NoPeaks) throw;
    }
  }
  if (rows.size() < 2) throw Error(ErrorKind::NoPeaks, "too few steps with detectable peaks");

  ProbeResult r;
  r.theta = theta;
  const std::size_t count = rows.back().size();
  for (std::size_t k = 0; k < count; ++k) {
    std::vector<double> x, y;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != count) continue;
      x.push_back(ts[i]);
      y.push_back(rows[i][k].position);
    }
    r.measured.push_back(std::clamp(fit_slope(x, y), -1.0, 1.0));
  }
  std::sort(r.measured.begin(), r.measured.end());

  const Mat2 w0 = momentum_shift_op(theta).matrix() * coin.matrix();
  for (const auto& [v, weight] : branch_velocities(w0, density(options.rho00))) {
    r.theory.push_back(v);
    if (weight >= 0.1) r.predicted.push_back(v);
  }
  std::sort(r.theory.begin(), r.theory.end());
  std::sort(r.predicted.begin(), r.predicted.end());

  auto nearest = [](double v, const std::vector<double>& set) {
    double best = std::numeric_limits<double>::infinity();
    for (double s : set) best = std::min(best, std::abs(v - s));
    return best;
  };
  // Measured peaks may match any branch; populated branches must be seen.
  for (double m : r.measured) r.max_error = std::max(r.max_error, nearest(m, r.theory));
  for (double p : r.predicted) r.max_error = std::max(r.max_error, nearest(p, r.measured));
  return r;
}

}  // namespace

std::vector<ProbeResult> probe_dispersion(const CoinOp& coin, const OverlapModel& model,
                                          std::span<const double> thetas,
                                          const ProbeOptions& options) {
  std::vector<ProbeResult> out(thetas.size());
  parallel_for(thetas.size(), [&](std::size_t i) { out[i] = probe_one(coin, model, thetas[i], options); });
  return out;
}

double PhaseSpaceGrid::re(std::size_t i) const {
  if (re_points < 2) return re_min;
  return re_min + (re_max - re_min) * static_cast<double>(i) / static_cast<double>(re_points - 1);
}

double PhaseSpaceGrid::im(std::size_t j) const {
  if (im_points < 2) return im_min;
  return im_min + (im_max - im_min) * static_cast<double>(j) / static_cast<double>(im_points - 1);
}

namespace {

std::vector<std::vector<double>> husimi_weighted(std::span<const std::pair<double, double>> sources,
                                                 const PhaseSpaceGrid& grid) {
  std::vector<std::vector<double>> out(grid.im_points, std::vector<double>(grid.re_points, 0.0));
  for (std::size_t j = 0; j < grid.im_points; ++j) {
    const double im = grid.im(j);
    for (std::size_t i = 0; i < grid.re_points; ++i) {
      const double re = grid.re(i);
      double v = 0.0;
      for (const auto& [alpha, w] : sources) v += w * std::exp(-((re - alpha) * (re - alpha) + im * im));
      out[j][i] = v;
    }
  }
  return out;
}

void require_sigma(const OverlapModel& model) {
  if (!model.sigma() || *model.sigma() == 0.0)
    throw Error(ErrorKind::SigmaZero, "Husimi picture needs sigma > 0");
}

}  // namespace

std::vector<std::vector<double>> husimi_grid(long x, const OverlapModel& model,
                                             const PhaseSpaceMap& map, const PhaseSpaceGrid& grid) {
  require_sigma(model);
  const std::pair<double, double> src{map.alpha(x), 1.0};
  return husimi_weighted(std::span(&src, 1), grid);
}

std::vector<std::vector<double>> husimi_grid(const WalkState& alpha_coeffs,
                                             const OverlapModel& model, const PhaseSpaceMap& map,
                                             const PhaseSpaceGrid& grid) {
  require_sigma(model);
  if (alpha_coeffs.basis() != BasisTag::AlphaBasis)
    throw Error(ErrorKind::BasisMismatch, "husimi_grid needs AlphaBasis coefficients");
  const WalkState pos = alpha_coeffs.to_position();
  std::vector<std::pair<double, double>> sources;
  double total = 0.0;
  for (std::size_t i = 0; i < pos.grid().size(); ++i) {
    const double w = pos.amplitudes()[i].norm_squared();
    if (w < 1e-300) continue;
    sources.emplace_back(map.alpha(pos.grid().site(i)), w);
    total += w;
  }
  for (auto& s : sources) s.second /= total;
  return husimi_weighted(sources, grid);
}

}  // namespace nqw
