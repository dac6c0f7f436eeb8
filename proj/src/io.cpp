#include "nqw/io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "nqw/error.hpp"

namespace nqw::io {

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  out << "t,x,P\n";
  for (const auto& row : traj.rows)
    for (std::size_t i = 0; i < row.probability.size(); ++i)
      out << row.t << ',' << traj.grid.site(i) << ',' << fmt(row.probability[i]) << '\n';
}

void write_trajectory_json(std::ostream& out, const Trajectory& traj) {
  // Written by hand so the numbers use the same 17-digit form as the CSV.
  out << "{\"config\":" << traj.config.dump() << ",\"grid_size\":" << traj.grid.size();
  auto column = [&](const char* name, auto&& value) {
    out << ",\"" << name << "\":[";
    bool first = true;
    for (const auto& row : traj.rows)
      for (std::size_t i = 0; i < row.probability.size(); ++i) {
        if (!first) out << ',';
        first = false;
        out << value(row, i);
      }
    out << ']';
  };
  column("t", [](const TrajectoryRow& r, std::size_t) { return std::to_string(r.t); });
  column("x", [&](const TrajectoryRow&, std::size_t i) { return std::to_string(traj.grid.site(i)); });
  column("P", [](const TrajectoryRow& r, std::size_t i) { return fmt(r.probability[i]); });
  out << "}\n";
}

Trajectory read_trajectory_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != "t,x,P")
    throw Error(ErrorKind::InvalidArgument, "trajectory CSV must start with 't,x,P'");
  std::map<std::size_t, std::vector<std::pair<long, double>>> by_t;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ss(line);
    std::string a, b, c;
    if (!std::getline(ss, a, ',') || !std::getline(ss, b, ',') || !std::getline(ss, c))
      throw Error(ErrorKind::InvalidArgument, "malformed trajectory line '" + line + "'");
    by_t[std::stoul(a)].emplace_back(std::stol(b), std::stod(c));
  }
  if (by_t.empty()) throw Error(ErrorKind::InvalidArgument, "trajectory CSV has no rows");
  const std::size_t m = by_t.begin()->second.size();
  Trajectory traj;
  traj.grid = LatticeGrid(m);
  for (auto& [t, cells] : by_t) {
    if (cells.size() != m) throw Error(ErrorKind::InvalidArgument, "rows differ in site count");
    TrajectoryRow row{t, std::vector<double>(m, 0.0)};
    for (const auto& [x, p] : cells) row.probability[traj.grid.index(x)] = p;
    traj.rows.push_back(std::move(row));
  }
  return traj;
}

void write_dispersion_csv(std::ostream& out, const SpectralData& spec) {
  out << "p,omega1,omega2,v1,v2\n";
  const bool v = spec.has_velocity();
  for (std::size_t j = 0; j < spec.grid.size(); ++j) {
    out << fmt(spec.grid.momentum(j)) << ',' << fmt(spec.omega[0][j]) << ','
        << fmt(spec.omega[1][j]) << ',';
    if (v) out << fmt(spec.velocity[0][j]) << ',' << fmt(spec.velocity[1][j]);
    else out << ',';
    out << '\n';
  }
}

void write_asymptotic_csv(std::ostream& out, const AsymptoticDistribution& dist) {
  out << "q_lo,q_hi,mass\n";
  for (std::size_t b = 0; b < dist.masses.size(); ++b)
    out << fmt(dist.edges[b]) << ',' << fmt(dist.edges[b + 1]) << ',' << fmt(dist.masses[b]) << '\n';
}

void write_bloch_csv(std::ostream& out, const BlochRun& run) {
  out << "t,peak1,peak2,N_expect\n";
  for (std::size_t i = 0; i < run.trajectory.rows.size(); ++i) {
    const auto& peaks = i < run.peaks.size() ? run.peaks[i] : std::vector<Peak>{};
    std::string left, right;
    if (peaks.size() >= 2) {
      left = fmt(peaks.front().position);
      right = fmt(peaks.back().position);
    } else if (peaks.size() == 1) {
      (peaks[0].position < 0.0 ? left : right) = fmt(peaks[0].position);
    }
    const double n = i < run.occupation.size() ? run.occupation[i]
                                               : std::numeric_limits<double>::quiet_NaN();
    out << run.trajectory.rows[i].t << ',' << left << ',' << right << ','
        << (std::isnan(n) ? std::string() : fmt(n)) << '\n';
  }
}

void write_probe_csv(std::ostream& out, std::span<const ProbeResult> results) {
  out << "theta,v_measured,v_theory,error\n";
  for (const auto& r : results) {
    for (double m : r.measured) {
      double best = std::numeric_limits<double>::quiet_NaN();
      for (double p : r.theory)
        if (std::isnan(best) || std::abs(m - p) < std::abs(m - best)) best = p;
      out << fmt(r.theta) << ',' << fmt(m) << ',' << fmt(best) << ',' << fmt(std::abs(m - best))
          << '\n';
    }
  }
}

void write_husimi_csv(std::ostream& out, const std::vector<std::vector<double>>& values,
                      const PhaseSpaceGrid& grid) {
  out << "im\\re";
  for (std::size_t i = 0; i < grid.re_points; ++i) out << ',' << fmt(grid.re(i));
  out << '\n';
  for (std::size_t j = 0; j < values.size(); ++j) {
    out << fmt(grid.im(j));
    for (double v : values[j]) out << ',' << fmt(v);
    out << '\n';
  }
}

void write_heatmap_svg(std::ostream& out, const Trajectory& traj, const std::string& title) {
  const std::size_t m = traj.grid.size();
  double peak = 0.0;
  for (const auto& row : traj.rows)
    for (double p : row.probability) peak = std::max(peak, p);
  std::size_t lo = m, hi = 0;
  for (const auto& row : traj.rows)
    for (std::size_t i = 0; i < m; ++i)
      if (peak > 0.0 && row.probability[i] > 1e-9 * peak) {
        lo = std::min(lo, i);
        hi = std::max(hi, i);
      }
  if (lo > hi) lo = hi = m / 2;

  constexpr int cell = 4, margin = 40;
  const auto cols = static_cast<int>(hi - lo + 1);
  const auto rows = static_cast<int>(traj.rows.size());
  const int width = cols * cell + 2 * margin;
  const int height = rows * cell + 2 * margin;

  std::string safe;
  for (char c : title) {
    if (c == '<') safe += "&lt;";
    else if (c == '>') safe += "&gt;";
    else if (c == '&') safe += "&amp;";
    else safe += c;
  }

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
  out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  out << "<text x=\"" << margin << "\" y=\"" << margin / 2 << "\" font-family=\"sans-serif\" "
      << "font-size=\"12\">" << safe << "</text>\n";
  out << "<g shape-rendering=\"crispEdges\">\n";
  for (int r = 0; r < rows; ++r) {
    const auto& p = traj.rows[static_cast<std::size_t>(r)].probability;
    for (int c = 0; c < cols; ++c) {
      // Black is P = 1; sqrt keeps the fainter branches visible.
      const double v = p[lo + static_cast<std::size_t>(c)];
      if (v < 1.0 / 512.0) continue;
      const int grey = 255 - static_cast<int>(std::lround(255.0 * std::sqrt(std::min(v, 1.0))));
      out << "<rect x=\"" << margin + c * cell << "\" y=\"" << margin + r * cell << "\" width=\""
          << cell << "\" height=\"" << cell << "\" fill=\"rgb(" << grey << ',' << grey << ','
          << grey << ")\"/>\n";
    }
  }
  out << "</g>\n";
  const int axis_y = margin + rows * cell + 14;
  out << "<text x=\"" << margin << "\" y=\"" << axis_y
      << "\" font-family=\"sans-serif\" font-size=\"10\">x = " << traj.grid.site(lo) << "</text>\n";
  out << "<text x=\"" << margin + cols * cell << "\" y=\"" << axis_y
      << "\" font-family=\"sans-serif\" font-size=\"10\" text-anchor=\"end\">x = "
      << traj.grid.site(hi) << "</text>\n";
  if (rows > 0)
    out << "<text x=\"4\" y=\"" << margin + 8 << "\" font-family=\"sans-serif\" font-size=\"10\">t = "
        << traj.rows.front().t << "</text>\n"
        << "<text x=\"4\" y=\"" << margin + rows * cell << "\" font-family=\"sans-serif\" "
        << "font-size=\"10\">t = " << traj.rows.back().t << "</text>\n";
  out << "</svg>\n";
}

}  // namespace nqw::io
