#include <gtest/gtest.h>

#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "nqw/error.hpp"
#include "nqw/io.hpp"

using namespace nqw;

namespace {

Trajectory small_walk(std::size_t steps = 6, std::size_t m = 16) {
  const LatticeGrid grid(m);
  Trajectory t = evolve(WalkState::one_hot(grid, 0, Spinor{cplx{0.6}, cplx{0.0, 0.8}}).to_momentum(),
                        coin_hadamard(), ShiftSchedule::constant(0.0), steps);
  t.config = {{"command", "walk"}, {"steps", steps}};
  return t;
}

std::vector<std::string> lines(const std::string& s) {
  std::vector<std::string> out;
  std::istringstream in(s);
  for (std::string l; std::getline(in, l);) out.push_back(l);
  return out;
}

}  // namespace

TEST(Fmt, RoundTripsDoubles) {
  for (double v : {0.1, 1.0 / 3.0, 1e-300, -2.5e17, 0.0})
    EXPECT_EQ(std::stod(io::fmt(v)), v) << io::fmt(v);
}

TEST(TrajectoryCsv, HeaderRowCountAndReadBack) {
  const Trajectory t = small_walk();
  std::ostringstream out;
  io::write_trajectory_csv(out, t);
  const auto ls = lines(out.str());
  EXPECT_EQ(ls.front(), "t,x,P");
  EXPECT_EQ(ls.size(), 1 + t.rows.size() * t.grid.size());
  EXPECT_EQ(ls[1].substr(0, 5), "0,-8,");

  std::istringstream in(out.str());
  const Trajectory back = io::read_trajectory_csv(in);
  ASSERT_EQ(back.rows.size(), t.rows.size());
  EXPECT_EQ(back.grid, t.grid);
  for (std::size_t r = 0; r < t.rows.size(); ++r) {
    EXPECT_EQ(back.rows[r].t, t.rows[r].t);
    EXPECT_EQ(back.rows[r].probability, t.rows[r].probability);
  }
}

TEST(TrajectoryCsv, RejectsMalformedInput) {
  std::istringstream no_header("x,y\n");
  EXPECT_THROW(io::read_trajectory_csv(no_header), Error);
  std::istringstream empty("t,x,P\n");
  EXPECT_THROW(io::read_trajectory_csv(empty), Error);
  std::istringstream ragged("t,x,P\n0,-1,0.5\n0,0,0.5\n1,0,1\n");
  EXPECT_THROW(io::read_trajectory_csv(ragged), Error);
}

TEST(TrajectoryJson, ColumnsMatchCsv) {
  const Trajectory t = small_walk(3);
  std::ostringstream out;
  io::write_trajectory_json(out, t);
  const auto j = nlohmann::json::parse(out.str());
  EXPECT_EQ(j.at("grid_size"), 16);
  EXPECT_EQ(j.at("config").at("command"), "walk");
  const std::size_t n = t.rows.size() * t.grid.size();
  ASSERT_EQ(j.at("P").size(), n);
  EXPECT_EQ(j.at("t").size(), n);
  EXPECT_EQ(j.at("x")[0], -8);
  EXPECT_EQ(j.at("P")[n - 1].get<double>(), t.rows.back().probability.back());
}

TEST(Output, IsDeterministic) {
  std::ostringstream a, b;
  io::write_trajectory_csv(a, small_walk());
  io::write_trajectory_csv(b, small_walk());
  EXPECT_EQ(a.str(), b.str());
}

TEST(DispersionCsv, Columns) {
  const SpectralData s = analyze(coin_hadamard(), LatticeGrid(8));
  std::ostringstream out;
  io::write_dispersion_csv(out, s);
  const auto ls = lines(out.str());
  EXPECT_EQ(ls.front(), "p,omega1,omega2,v1,v2");
  ASSERT_EQ(ls.size(), 9u);
  EXPECT_EQ(std::count(ls[1].begin(), ls[1].end(), ','), 4);
}

TEST(AsymptoticCsv, MassesSumToOne) {
  const auto d = asymptotic_distribution(analyze(coin_hadamard(), LatticeGrid(64)),
                                         OverlapModel::gaussian(0.0), density(Spinor::up()), 11);
  std::ostringstream out;
  io::write_asymptotic_csv(out, d);
  const auto ls = lines(out.str());
  EXPECT_EQ(ls.front(), "q_lo,q_hi,mass");
  ASSERT_EQ(ls.size(), 12u);
  double total = 0.0;
  for (std::size_t i = 1; i < ls.size(); ++i) total += std::stod(ls[i].substr(ls[i].rfind(',') + 1));
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(BlochCsv, SidesAndMissingValues) {
  BlochRun run;
  run.peaks = {{{-3.0, 0.4}, {5.0, 0.4}}, {{2.0, 0.9}}, {{-1.5, 0.9}}, {}};
  run.occupation = {1.0, 2.0, 3.0, 4.0};
  for (std::size_t t = 0; t < 4; ++t) run.trajectory.rows.push_back({t, {}});
  std::ostringstream out;
  io::write_bloch_csv(out, run);
  const auto ls = lines(out.str());
  ASSERT_EQ(ls.size(), 5u);
  EXPECT_EQ(ls[0], "t,peak1,peak2,N_expect");
  EXPECT_EQ(ls[1], "0,-3,5,1");
  EXPECT_EQ(ls[2], "1,,2,2");
  EXPECT_EQ(ls[3], "2,-1.5,,3");
  EXPECT_EQ(ls[4], "3,,,4");
}

TEST(ProbeCsv, PairsWithNearestTheory) {
  ProbeResult r;
  r.theta = 0.5;
  r.measured = {-0.6, 0.69};
  r.theory = {-0.7, 0.7};
  const std::vector<ProbeResult> rs{r};
  std::ostringstream out;
  io::write_probe_csv(out, rs);
  const auto ls = lines(out.str());
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[0], "theta,v_measured,v_theory,error");
  EXPECT_EQ(ls[1].rfind("0.5,-0.59999999", 0), 0u);
  EXPECT_NE(ls[1].find(",-0.69999999"), std::string::npos);
  EXPECT_NE(ls[2].find(",0.69999999"), std::string::npos);
}

TEST(HusimiCsv, Shape) {
  PhaseSpaceGrid g;
  g.re_points = 3;
  g.im_points = 2;
  const std::vector<std::vector<double>> v{{1, 2, 3}, {4, 5, 6}};
  std::ostringstream out;
  io::write_husimi_csv(out, v, g);
  const auto ls = lines(out.str());
  ASSERT_EQ(ls.size(), 3u);
  EXPECT_EQ(ls[0].substr(0, 6), "im\\re,");
  EXPECT_EQ(ls[1].substr(ls[1].find(',')), ",1,2,3");
}

TEST(HeatmapSvg, WellFormedAndStatic) {
  std::ostringstream out;
  io::write_heatmap_svg(out, small_walk(20, 128), "hadamard <walk> & co");
  const std::string s = out.str();
  EXPECT_EQ(s.rfind("<svg", 0) == 0 || s.rfind("<?xml", 0) == 0, true);
  EXPECT_NE(s.find("</svg>"), std::string::npos);
  EXPECT_NE(s.find("<rect"), std::string::npos);
  EXPECT_EQ(s.find("<script"), std::string::npos);
  EXPECT_EQ(s.find("<walk>"), std::string::npos);  // title is escaped
}
