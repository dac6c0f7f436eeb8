// nqwalk: command-line front end for the non-orthogonal quantum walk library.

#include <CLI11.hpp>
#include <cmath>
#include <cstdio>
#include <algorithm>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "nqw/config.hpp"
#include "nqw/error.hpp"
#include "nqw/evolution.hpp"
#include "nqw/io.hpp"
#include "nqw/observables.hpp"
#include "nqw/spectral.hpp"
#include "nqw/validate.hpp"

namespace {

using nqw::ExperimentConfig;

constexpr int kOk = 0;
constexpr int kValidationFailed = 1;
constexpr int kConfigError = 2;
constexpr int kNumericalGuard = 3;

constexpr std::size_t kSpectralGrid = 4096;

// Flag values; only options that were given on the command line are applied.
struct Flags {
  std::string config_path;
  std::string coin, switch_off, output, format, svg, husimi;
  double sigma = 0, theta = 0, delta_theta = 0, origin = 0;
  std::size_t steps = 0, t_on = 0, t_off = 0, grid_size = 0, bins = 0, theta_points = 0,
              record_every = 0;
  std::uint64_t seed = 0;
  std::vector<double> coin_state;
  bool print_config = false;
};

struct Registered {
  CLI::App* app;
  std::map<std::string, CLI::Option*> opts;
};

Registered add_command(CLI::App& root, const std::string& name, const std::string& help,
                       Flags& f, const std::vector<std::string>& keys) {
  Registered r{root.add_subcommand(name, help), {}};
  auto* app = r.app;
  app->add_option("--config", f.config_path, "JSON config file; flags override its values");
  app->add_flag("--print-config", f.print_config, "print the resolved config as JSON and exit");
  auto want = [&](const std::string& k) {
    return std::find(keys.begin(), keys.end(), k) != keys.end();
  };
  auto& o = r.opts;
  if (want("coin"))
    o["coin"] = app->add_option("--coin", f.coin, "experimental|hadamard|identity|rotation:<angle>");
  if (want("sigma")) o["sigma"] = app->add_option("--sigma", f.sigma, "overlap width (>= 0)");
  if (want("steps")) o["steps"] = app->add_option("--steps", f.steps, "number of walk steps");
  if (want("theta")) o["theta"] = app->add_option("--theta", f.theta, "constant momentum offset");
  if (want("delta_theta"))
    o["delta_theta"] = app->add_option("--delta-theta", f.delta_theta, "offset increment per step");
  if (want("t_on")) o["t_on"] = app->add_option("--t-on", f.t_on, "first driven step");
  if (want("t_off")) o["t_off"] = app->add_option("--t-off", f.t_off, "first undriven step");
  if (want("switch_off"))
    o["switch_off"] = app->add_option("--switch-off", f.switch_off, "freeze|reset");
  if (want("coin_state"))
    o["coin_state"] = app->add_option("--coin-state", f.coin_state,
                                      "initial spinor: re+ im+ re- im-")
                          ->expected(4);
  if (want("grid_size"))
    o["grid_size"] = app->add_option("--grid-size", f.grid_size, "lattice size override (even)");
  if (want("seed")) o["seed"] = app->add_option("--seed", f.seed, "seed for randomized checks");
  if (want("bins")) o["bins"] = app->add_option("--bins", f.bins, "histogram bins over [-1, 1]");
  if (want("theta_points"))
    o["theta_points"] = app->add_option("--theta-points", f.theta_points, "offsets in [-pi, pi]");
  if (want("record_every"))
    o["record_every"] = app->add_option("--record-every", f.record_every, "row stride");
  if (want("origin"))
    o["origin"] = app->add_option("--origin", f.origin, "phase-space line offset for <N>");
  o["output"] = app->add_option("-o,--output", f.output, "output file (default stdout)");
  if (want("format")) o["format"] = app->add_option("--format", f.format, "csv|json|svg");
  if (want("svg")) o["svg"] = app->add_option("--svg", f.svg, "also write an SVG heatmap here");
  if (want("husimi"))
    o["husimi"] = app->add_option("--husimi", f.husimi, "write the final Husimi grid CSV here");
  return r;
}

ExperimentConfig resolve(const std::string& command, const Flags& f, const Registered& r) {
  ExperimentConfig c;
  if (!f.config_path.empty()) {
    std::ifstream in(f.config_path);
    if (!in) throw nqw::Error(nqw::ErrorKind::Config, "cannot open config '" + f.config_path + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw nqw::Error(nqw::ErrorKind::Config, std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) throw nqw::Error(nqw::ErrorKind::Config, "config must be a JSON object");
    if (j.contains("command") && j["command"] != command)
      throw nqw::Error(nqw::ErrorKind::Config,
                       "config is for command '" + j["command"].dump() + "', not '" + command + "'");
    j["command"] = command;
    c = j.get<ExperimentConfig>();
  } else {
    c = ExperimentConfig::defaults(command);
  }
  auto given = [&](const char* k) {
    auto it = r.opts.find(k);
    return it != r.opts.end() && it->second->count() > 0;
  };
  if (given("coin")) c.coin = nqw::CoinSpec::parse(f.coin);
  if (given("sigma")) c.sigma = f.sigma;
  if (given("steps")) c.steps = f.steps;
  if (given("theta")) c.theta = f.theta;
  if (given("delta_theta")) c.delta_theta = f.delta_theta;
  if (given("t_on")) c.t_on = f.t_on;
  if (given("t_off")) c.t_off = f.t_off;
  if (given("switch_off")) {
    if (f.switch_off == "freeze")
      c.switch_off = nqw::SwitchOffMode::Freeze;
    else if (f.switch_off == "reset")
      c.switch_off = nqw::SwitchOffMode::Reset;
    else
      throw nqw::Error(nqw::ErrorKind::Config, "--switch-off must be freeze or reset");
  }
  if (given("coin_state"))
    c.coin_state = {nqw::cplx{f.coin_state[0], f.coin_state[1]},
                    nqw::cplx{f.coin_state[2], f.coin_state[3]}};
  if (given("grid_size")) c.grid_size = f.grid_size;
  if (given("seed")) c.seed = f.seed;
  if (given("bins")) c.bins = f.bins;
  if (given("theta_points")) c.theta_points = f.theta_points;
  if (given("record_every")) c.record_every = f.record_every;
  if (given("origin")) c.origin = f.origin;
  if (given("output")) c.output = f.output;
  if (given("format")) c.format = nqw::parse_format(f.format);
  c.validate();
  return c;
}

// Writes to the configured file, or stdout when none is set.
void emit(const std::string& path, const std::function<void(std::ostream&)>& body) {
  if (path.empty()) {
    body(std::cout);
    std::cout.flush();
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw nqw::Error(nqw::ErrorKind::Config, "cannot write '" + path + "'");
  body(out);
  if (!out) throw nqw::Error(nqw::ErrorKind::Config, "write to '" + path + "' failed");
}

nqw::LatticeGrid spectral_grid(const ExperimentConfig& c) {
  return nqw::LatticeGrid(c.grid_size != 0 ? c.grid_size : kSpectralGrid);
}

int cmd_walk(const ExperimentConfig& c, const Flags& f) {
  const nqw::LatticeGrid grid =
      c.grid_size != 0 ? nqw::LatticeGrid(c.grid_size) : nqw::LatticeGrid::for_walk(c.steps, c.sigma);
  const auto model = nqw::OverlapModel::gaussian(c.sigma);
  const auto psi0 = nqw::initial_state(model, grid, c.spinor());
  nqw::EvolveOptions opts;
  opts.record_every = c.record_every;
  auto traj = nqw::evolve(psi0, c.coin.op(), nqw::ShiftSchedule::constant(c.theta), c.steps, opts);
  traj.config = c;
  const std::string title = "P_t(x), coin " + c.coin.to_string() + ", sigma " + nqw::io::fmt(c.sigma);
  emit(c.output, [&](std::ostream& out) {
    switch (c.format) {
      case nqw::OutputFormat::Csv: nqw::io::write_trajectory_csv(out, traj); break;
      case nqw::OutputFormat::Json: nqw::io::write_trajectory_json(out, traj); break;
      case nqw::OutputFormat::Svg: nqw::io::write_heatmap_svg(out, traj, title); break;
    }
  });
  if (!f.svg.empty()) emit(f.svg, [&](std::ostream& out) { nqw::io::write_heatmap_svg(out, traj, title); });
  return kOk;
}

int cmd_dispersion(const ExperimentConfig& c) {
  const auto spec = nqw::analyze(c.coin.op(), spectral_grid(c), c.theta);
  emit(c.output, [&](std::ostream& out) { nqw::io::write_dispersion_csv(out, spec); });
  return kOk;
}

int cmd_asymptotic(const ExperimentConfig& c) {
  const auto spec = nqw::analyze(c.coin.op(), spectral_grid(c), c.theta);
  const auto dist = nqw::asymptotic_distribution(spec, nqw::OverlapModel::gaussian(c.sigma),
                                                 nqw::density(c.spinor()), c.bins);
  emit(c.output, [&](std::ostream& out) { nqw::io::write_asymptotic_csv(out, dist); });
  std::fprintf(stderr, "mean %.6f  stddev %.6f\n", dist.mean(), dist.stddev());
  return kOk;
}

int cmd_bloch(const ExperimentConfig& c, const Flags& f) {
  nqw::BlochConfig b;
  b.walk.coin = c.coin.op();
  b.walk.sigma = c.sigma;
  b.walk.steps = c.steps;
  b.walk.rho00 = c.spinor();
  b.walk.grid_size = c.grid_size;
  b.delta_theta = c.delta_theta;
  b.t_on = c.t_on;
  b.t_off = c.t_off;
  b.mode = c.switch_off;
  b.origin = c.origin;
  auto run = nqw::run_bloch(b);
  run.trajectory.config = c;
  const std::string title = "Bloch oscillation, sigma " + nqw::io::fmt(c.sigma) + ", driven " +
                            std::to_string(c.t_on) + " to " + std::to_string(c.t_off);
  emit(c.output, [&](std::ostream& out) {
    if (c.format == nqw::OutputFormat::Svg)
      nqw::io::write_heatmap_svg(out, run.trajectory, title);
    else
      nqw::io::write_bloch_csv(out, run);
  });
  if (!f.svg.empty())
    emit(f.svg, [&](std::ostream& out) { nqw::io::write_heatmap_svg(out, run.trajectory, title); });
  if (!f.husimi.empty()) {
    const auto model = nqw::OverlapModel::gaussian(c.sigma);
    const auto map = nqw::PhaseSpaceMap::from_model(model, c.origin);
    const nqw::PhaseSpaceGrid grid;
    const auto values = nqw::husimi_grid(*run.final_alpha, model, map, grid);
    emit(f.husimi, [&](std::ostream& out) { nqw::io::write_husimi_csv(out, values, grid); });
  }
  return kOk;
}

int cmd_probe(const ExperimentConfig& c) {
  std::vector<double> thetas(c.theta_points);
  for (std::size_t i = 0; i < thetas.size(); ++i)
    thetas[i] = -nqw::kPi + 2.0 * nqw::kPi * static_cast<double>(i) /
                                static_cast<double>(thetas.size() - 1);
  nqw::ProbeOptions opts;
  opts.steps = c.steps;
  opts.rho00 = c.spinor();
  const auto results = nqw::probe_dispersion(c.coin.op(), nqw::OverlapModel::gaussian(c.sigma), thetas, opts);
  emit(c.output, [&](std::ostream& out) { nqw::io::write_probe_csv(out, results); });
  double worst = 0.0;
  for (const auto& r : results) worst = std::max(worst, r.max_error);
  std::fprintf(stderr, "max |v_measured - v_theory| = %.4f\n", worst);
  return kOk;
}

int cmd_validate(const ExperimentConfig& c) {
  const auto results = nqw::run_property_suite(c.seed);
  bool all = true;
  emit(c.output, [&](std::ostream& out) {
    for (const auto& r : results) {
      char line[512];
      std::snprintf(line, sizeof line, "%-4s  %-60s %7.2fs  %s\n", r.passed ? "PASS" : "FAIL",
                    r.name.c_str(), r.seconds, r.detail.c_str());
      out << line;
      all = all && r.passed;
    }
  });
  return all ? kOk : kValidationFailed;
}

int exit_code_for(nqw::ErrorKind kind) {
  switch (kind) {
    case nqw::ErrorKind::Config:
    case nqw::ErrorKind::InvalidArgument:
    case nqw::ErrorKind::BasisMismatch:
    case nqw::ErrorKind::SigmaZero:
      return kConfigError;
    default:
      return kNumericalGuard;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Coined quantum walks in a non-orthogonal (overlapping) basis"};
  app.require_subcommand(1);
  Flags f;
  const std::vector<std::string> walk_keys{"coin", "sigma", "steps", "theta", "coin_state",
                                           "grid_size", "record_every", "format", "svg"};
  std::map<std::string, Registered> cmds;
  cmds.emplace("walk", add_command(app, "walk", "evolve a walk and write P_t(x)", f, walk_keys));
  cmds.emplace("dispersion", add_command(app, "dispersion", "dispersion branches and group velocities",
                                         f, {"coin", "theta", "grid_size"}));
  cmds.emplace("asymptotic",
               add_command(app, "asymptotic", "asymptotic velocity distribution", f,
                           {"coin", "sigma", "theta", "coin_state", "grid_size", "bins"}));
  cmds.emplace("bloch", add_command(app, "bloch", "Bloch oscillations under a linearly growing offset", f,
                                    {"coin", "sigma", "steps", "delta_theta", "t_on", "t_off",
                                     "switch_off", "coin_state", "grid_size", "origin", "format",
                                     "svg", "husimi"}));
  cmds.emplace("probe", add_command(app, "probe", "measure peak velocities over an offset sweep", f,
                                    {"coin", "sigma", "steps", "coin_state", "theta_points"}));
  cmds.emplace("validate", add_command(app, "validate", "run the property and oracle suite", f, {"seed"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfigError;
  }

  for (auto& [name, reg] : cmds) {
    if (!reg.app->parsed()) continue;
    try {
      const ExperimentConfig cfg = resolve(name, f, reg);
      if (f.print_config) {
        std::cout << nlohmann::json(cfg).dump(2) << '\n';
        return kOk;
      }
      if (name == "walk") return cmd_walk(cfg, f);
      if (name == "dispersion") return cmd_dispersion(cfg);
      if (name == "asymptotic") return cmd_asymptotic(cfg);
      if (name == "bloch") return cmd_bloch(cfg, f);
      if (name == "probe") return cmd_probe(cfg);
      if (name == "validate") return cmd_validate(cfg);
    } catch (const nqw::Error& e) {
      std::fprintf(stderr, "nqwalk %s: %s\n", name.c_str(), e.what());
      return exit_code_for(e.kind());
    } catch (const std::exception& e) {
      std::fprintf(stderr, "nqwalk %s: %s\n", name.c_str(), e.what());
      return kNumericalGuard;
    }
  }
  return kConfigError;
}
