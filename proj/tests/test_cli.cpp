#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <algorithm>
#include <sstream>

#include <json.hpp>

#include "nqw/io.hpp"

namespace {

struct Result {
  int code = -1;
  std::string out;
};

// Runs the CLI with stderr discarded and returns its exit status and stdout.
Result run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + std::string(NQWALK_BIN) + " " + args + " 2>/dev/null";
  Result r;
  FILE* p = popen(cmd.c_str(), "r");
  if (!p) return r;
  char buf[1 << 16];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
  const int status = pclose(p);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::vector<std::vector<std::string>> csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    for (std::string c; std::getline(ls, c, ',');) cells.push_back(c);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    rows.push_back(cells);
  }
  return rows;
}

nqw::Trajectory walk(const std::string& args) {
  const Result r = run("walk " + args);
  EXPECT_EQ(r.code, 0) << args;
  std::istringstream in(r.out);
  return nqw::io::read_trajectory_csv(in);
}

std::filesystem::path temp(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("nqw_cli_" + name);
}

}  // namespace

TEST(Cli, ValidateSucceeds) {
  const Result r = run("validate");
  EXPECT_EQ(r.code, 0);
  EXPECT_NE(r.out.find("PASS"), std::string::npos);
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

TEST(Cli, ConfigErrorsExitTwo) {
  EXPECT_EQ(run("walk --sigma -1").code, 2);
  EXPECT_EQ(run("walk --coin grover").code, 2);
  EXPECT_EQ(run("walk --grid-size 63").code, 2);
  EXPECT_EQ(run("walk --no-such-flag").code, 2);
  EXPECT_EQ(run("dispersion --format json").code, 2);
  EXPECT_EQ(run("bloch --t-on 80 --t-off 70").code, 2);
  EXPECT_EQ(run("walk --config /nonexistent/cfg.json").code, 2);
  EXPECT_EQ(run("bloch --sigma 0 --husimi " + temp("h.csv").string()).code, 2);
}

TEST(Cli, BoundaryGuardExitsThree) {
  EXPECT_EQ(run("walk --coin hadamard --grid-size 64 --steps 100").code, 3);
}

TEST(Cli, HadamardPeaksNearLightConeFraction) {
  const nqw::Trajectory t = walk("--coin hadamard --sigma 0 --steps 150");
  const auto& p = t.final_row().probability;
  EXPECT_EQ(t.final_row().t, 150u);
  std::size_t left = 0, right = 0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (t.grid.site(i) < 0 && p[i] > p[left]) left = i;
    if (t.grid.site(i) >= 0 && p[i] > p[right]) right = i;
  }
  EXPECT_NEAR(static_cast<double>(t.grid.site(left)), -106.0, 3.0);
  EXPECT_NEAR(static_cast<double>(t.grid.site(right)), 106.0, 3.0);
}

TEST(Cli, ExperimentalWidePacketStaysCentral) {
  const nqw::Trajectory t = walk("--coin experimental --sigma 8 --steps 150");
  double inside = 0.0;
  const auto& p = t.final_row().probability;
  for (std::size_t i = 0; i < p.size(); ++i)
    if (std::abs(t.grid.site(i)) <= 30) inside += p[i];
  EXPECT_GE(inside, 0.99);
}

TEST(Cli, ZeroStepsIsTheInitialDistribution) {
  const nqw::Trajectory t = walk("--coin hadamard --sigma 2 --steps 0");
  ASSERT_EQ(t.rows.size(), 1u);
  EXPECT_EQ(t.rows[0].t, 0u);
  const auto& p = t.rows[0].probability;
  EXPECT_NEAR(p[t.grid.index(1)], p[t.grid.index(-1)], 1e-15);
}

TEST(Cli, DispersionVelocitiesAtZeroMomentum) {
  auto at_zero = [](const std::string& coin) {
    const auto rows = csv(run("dispersion --coin " + coin + " --grid-size 64").out);
    EXPECT_EQ(rows.size(), 65u);
    for (const auto& r : rows)
      if (r.size() == 5 && r[0] == "0") return std::pair{std::stod(r[3]), std::stod(r[4])};
    ADD_FAILURE() << "no p = 0 row";
    return std::pair{std::nan(""), std::nan("")};
  };
  const auto [h1, h2] = at_zero("hadamard");
  EXPECT_NEAR(std::abs(h1), 1.0 / std::sqrt(2.0), 1e-6);
  EXPECT_NEAR(h1 + h2, 0.0, 1e-6);
  const auto [e1, e2] = at_zero("experimental");
  EXPECT_NEAR(e1, 0.0, 1e-6);
  EXPECT_NEAR(e2, 0.0, 1e-6);
}

TEST(Cli, IdentityCoinDispersionIsLinear) {
  const auto rows = csv(run("dispersion --coin identity --grid-size 32").out);
  ASSERT_EQ(rows.size(), 33u);
  for (std::size_t i = 1; i < rows.size(); ++i) {
    const double p = std::stod(rows[i][0]);
    const double a = std::stod(rows[i][1]), b = std::stod(rows[i][2]);
    if (std::abs(p) < 1e-12 || std::abs(std::abs(p) - M_PI) < 1e-12) continue;
    EXPECT_NEAR(std::min(a, b), -std::abs(p), 1e-12);
    EXPECT_NEAR(std::max(a, b), std::abs(p), 1e-12);
  }
}

TEST(Cli, AsymptoticHistogramIsNormalized) {
  const auto rows = csv(run("asymptotic --coin hadamard --sigma 0 --bins 101 --grid-size 512").out);
  ASSERT_EQ(rows.size(), 102u);
  EXPECT_EQ(rows[0][0], "q_lo");
  double total = 0.0;
  for (std::size_t i = 1; i < rows.size(); ++i) total += std::stod(rows[i][2]);
  EXPECT_NEAR(total, 1.0, 1e-12);
}

TEST(Cli, BlochWritesCsvAndSvg) {
  const auto svg = temp("bloch.svg");
  const Result r = run("bloch --svg " + svg.string());
  ASSERT_EQ(r.code, 0);
  const auto rows = csv(r.out);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"t", "peak1", "peak2", "N_expect"}));
  EXPECT_EQ(rows.size(), 102u);
  std::ifstream in(svg);
  std::stringstream s;
  s << in.rdbuf();
  EXPECT_NE(s.str().find("</svg>"), std::string::npos);
  EXPECT_EQ(s.str().find("<script"), std::string::npos);
  std::filesystem::remove(svg);
}

TEST(Cli, ProbeWritesOneLinePerPeak) {
  const Result r = run("probe --coin experimental --theta-points 3");
  ASSERT_EQ(r.code, 0);
  const auto rows = csv(r.out);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"theta", "v_measured", "v_theory", "error"}));
  EXPECT_GE(rows.size(), 4u);
}

TEST(Cli, ConfigFileAndFlagOverride) {
  const auto path = temp("cfg.json");
  std::ofstream(path) << R"({"command": "walk", "coin": "hadamard", "sigma": 1.5, "steps": 7})";
  const Result printed = run("walk --config " + path.string() + " --steps 9 --print-config");
  ASSERT_EQ(printed.code, 0);
  const auto j = nlohmann::json::parse(printed.out);
  EXPECT_EQ(j.at("steps"), 9);
  EXPECT_EQ(j.at("sigma"), 1.5);
  EXPECT_EQ(run("dispersion --config " + path.string()).code, 2);  // command mismatch
  const nqw::Trajectory t = walk("--config " + path.string());
  EXPECT_EQ(t.final_row().t, 7u);
  std::filesystem::remove(path);
}

TEST(Cli, PrintedConfigRoundTrips) {
  const auto path = temp("rt.json");
  const Result a = run("bloch --coin rotation:0.3 --sigma 6 --origin 0.25 --print-config");
  ASSERT_EQ(a.code, 0);
  std::ofstream(path) << a.out;
  const Result b = run("bloch --config " + path.string() + " --print-config");
  EXPECT_EQ(a.out, b.out);
  std::filesystem::remove(path);
}

TEST(Cli, OutputIsByteIdentical) {
  const std::string args = "walk --coin experimental --sigma 3 --steps 40";
  EXPECT_EQ(run(args).out, run(args).out);
  const auto file = temp("out.csv");
  ASSERT_EQ(run(args + " -o " + file.string()).code, 0);
  std::ifstream in(file);
  std::stringstream s;
  s << in.rdbuf();
  EXPECT_EQ(s.str(), run(args).out);
  std::filesystem::remove(file);
}

TEST(Cli, ScalarKernelsAgree) {
  const std::string args = "walk --coin hadamard --sigma 2 --steps 30";
  const Result scalar = run(args, "NQWALK_SIMD=scalar NQWALK_THREADS=1 ");
  ASSERT_EQ(scalar.code, 0);
  const auto a = csv(scalar.out), b = csv(run(args).out);
  ASSERT_EQ(a.size(), b.size());
  double worst = 0.0;
  for (std::size_t i = 1; i < a.size(); ++i)
    worst = std::max(worst, std::abs(std::stod(a[i][2]) - std::stod(b[i][2])));
  EXPECT_LT(worst, 1e-13);
}
