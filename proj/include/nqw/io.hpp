#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "nqw/evolution.hpp"
#include "nqw/observables.hpp"
#include "nqw/spectral.hpp"

namespace nqw::io {

/// Shortest-safe decimal form, 17 significant digits ("%.17g").
std::string fmt(double v);

/// `t,x,P`, one line per recorded step and site.
void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
/// {"config": ..., "grid_size": M, "t": [...], "x": [...], "P": [...]}, columns of the CSV.
void write_trajectory_json(std::ostream& out, const Trajectory& traj);
/// Inverse of write_trajectory_csv; rows must list every site of the grid.
Trajectory read_trajectory_csv(std::istream& in);

/// `p,omega1,omega2,v1,v2`.
void write_dispersion_csv(std::ostream& out, const SpectralData& spec);
/// `q_lo,q_hi,mass`.
void write_asymptotic_csv(std::ostream& out, const AsymptoticDistribution& dist);
/// `t,peak1,peak2,N_expect`; peak1 is the leftmost and peak2 the rightmost
/// peak. A lone peak goes to the column on its side of the origin; missing
/// values are left empty.
void write_bloch_csv(std::ostream& out, const BlochRun& run);
/// `theta,v_measured,v_theory,error`, one line per measured peak, paired with
/// the nearest branch velocity.
void write_probe_csv(std::ostream& out, std::span<const ProbeResult> results);
/// Dense matrix: header `im\re,<re values>`, then `<im>,<row values>`.
void write_husimi_csv(std::ostream& out, const std::vector<std::vector<double>>& values,
                      const PhaseSpaceGrid& grid);

/// Greyscale heatmap of P_t(x): time runs downwards, black is P = 1.
/// Columns are cropped to sites that ever exceed 1e-9 of the peak density.
void write_heatmap_svg(std::ostream& out, const Trajectory& traj, const std::string& title);

}  // namespace nqw::io
