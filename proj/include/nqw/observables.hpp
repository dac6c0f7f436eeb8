#pragma once

#include <optional>
#include <span>
#include <vector>

#include "nqw/core.hpp"
#include "nqw/evolution.hpp"
#include "nqw/overlap.hpp"
#include "nqw/spectral.hpp"

namespace nqw {

struct WalkConfig {
  CoinOp coin = coin_hadamard();
  double sigma = 0.0;
  std::size_t steps = 0;
  Spinor rho00 = Spinor::up();
  /// Grid size override; 0 selects LatticeGrid::for_walk(steps, sigma).
  std::size_t grid_size = 0;

  LatticeGrid grid() const;
};

enum class SwitchOffMode {
  Freeze,  ///< keep the accumulated offset after t_off
  Reset,   ///< return to theta = 0 after t_off
};

struct BlochConfig {
  WalkConfig walk;
  double delta_theta = kPi / 10.0;
  std::size_t t_on = 20;
  std::size_t t_off = 65;
  SwitchOffMode mode = SwitchOffMode::Freeze;
  /// Offset of the phase-space line used for <N>.
  double origin = 0.0;

  /// The scenario of a sigma = 14 Hadamard walk driven from step 20 to 65.
  static BlochConfig reference();
  void validate() const;
};

/// Theta_t = 0 for t < t_on, (t - t_on + 1) delta_theta for t_on <= t < t_off,
/// then frozen at the t_off - 1 value or reset to 0.
ShiftSchedule bloch_schedule(const BlochConfig& cfg);

struct Peak {
  double position = 0.0;  ///< sites
  double mass = 0.0;      ///< probability within +-window of the maximum
};

/// Local maxima of the moving-average-smoothed distribution, refined by the
/// centroid over +-window sites. Peaks below min_mass are dropped, and of two
/// maxima closer than `window` only the higher survives. Positions are site
/// labels (index - M/2), sorted ascending. Throws NoPeaks when none survive.
std::vector<Peak> track_peaks(std::span<const double> distribution, double min_mass = 0.05,
                              std::size_t window = 5);

/// Phase-space line alpha_x = origin + x sqrt(2)/sigma.
struct PhaseSpaceMap {
  double step = 1.0;
  double origin = 0.0;

  static PhaseSpaceMap from_model(const OverlapModel& model, double origin = 0.0);
  double alpha(long x) const { return origin + step * static_cast<double>(x); }
};

/// <N> for psi = sum_{x,s} c_x^(s) |alpha_x> |s> on a real phase-space line,
/// using <alpha|a^dagger a|beta> = alpha beta <alpha|beta>.
double occupation_expectation(const WalkState& alpha_coeffs, const OverlapModel& model,
                              const PhaseSpaceMap& map);
double occupation_expectation(const WalkState& alpha_coeffs, const GramOperator& gram,
                              const PhaseSpaceMap& map);

struct BlochRun {
  Trajectory trajectory;
  std::vector<std::vector<Peak>> peaks;  ///< per row; empty when nothing passed track_peaks
  std::vector<double> occupation;        ///< <N> per row; NaN when sigma = 0
  ShiftSchedule schedule;
  std::optional<WalkState> final_alpha;  ///< last recorded alpha-basis coefficients
};

BlochRun run_bloch(const BlochConfig& cfg);

/// Leftmost / rightmost peak position per row (nullopt when absent).
std::vector<std::optional<double>> peak_series(const BlochRun& run, bool rightmost);

/// Period of a sampled oscillation: the first lag that is a local minimum of
/// the mean squared lag difference below 20% of its maximum.
std::optional<std::size_t> estimate_period(std::span<const double> series,
                                           std::size_t min_lag = 3);

/// Period of the heaviest peak right of the origin over the driven window
/// [t_on, t_off), after removing its least-squares drift.
std::optional<std::size_t> bloch_period(const BlochRun& run, const BlochConfig& cfg);

/// Least-squares slope of y against x.
double fit_slope(std::span<const double> x, std::span<const double> y);

struct ProbeResult {
  double theta = 0.0;
  std::vector<double> measured;  ///< peak velocities, sites/step, ascending
  std::vector<double> theory;    ///< both branch velocities of W_theta at p = 0
  std::vector<double> predicted; ///< the branches holding weight >= 0.1
  double max_error = 0.0;
};

struct ProbeOptions {
  std::size_t steps = 200;
  Spinor rho00 = Spinor::up();
  double min_mass = 0.01;
  std::size_t window = 10;
};

/// Runs the walk under a constant offset for each theta and fits peak
/// velocities over the last 25% of steps.
std::vector<ProbeResult> probe_dispersion(const CoinOp& coin, const OverlapModel& model,
                                          std::span<const double> thetas,
                                          const ProbeOptions& options = {});

/// Rectangular grid over the complex alpha plane.
struct PhaseSpaceGrid {
  double re_min = -4.0, re_max = 4.0;
  double im_min = -4.0, im_max = 4.0;
  std::size_t re_points = 81, im_points = 81;

  double re(std::size_t i) const;
  double im(std::size_t j) const;
};

/// Husimi picture of the single position state |alpha_x>: exp(-|alpha - alpha_x|^2).
/// Rows are im values, columns re values.
std::vector<std::vector<double>> husimi_grid(long x, const OverlapModel& model,
                                             const PhaseSpaceMap& map, const PhaseSpaceGrid& grid);

/// Weighted sum of single-position pictures, weights sum_s |c_x^(s)|^2 normalized.
std::vector<std::vector<double>> husimi_grid(const WalkState& alpha_coeffs,
                                             const OverlapModel& model, const PhaseSpaceMap& map,
                                             const PhaseSpaceGrid& grid);

}  // namespace nqw
