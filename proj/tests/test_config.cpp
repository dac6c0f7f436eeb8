#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "nqw/config.hpp"
#include "nqw/error.hpp"

using namespace nqw;
using nlohmann::json;

namespace {

void expect_config_error(const std::function<void()>& f) {
  try {
    f();
    ADD_FAILURE() << "no exception";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Config) << e.what();
  }
}

}  // namespace

TEST(CoinSpec, ParseAndPrint) {
  EXPECT_EQ(CoinSpec::parse("experimental").kind, CoinSpec::Kind::Experimental);
  EXPECT_EQ(CoinSpec::parse("hadamard").kind, CoinSpec::Kind::Hadamard);
  EXPECT_EQ(CoinSpec::parse("identity").kind, CoinSpec::Kind::Identity);
  const CoinSpec r = CoinSpec::parse("rotation:0.25");
  EXPECT_EQ(r.kind, CoinSpec::Kind::Rotation);
  EXPECT_DOUBLE_EQ(r.angle, 0.25);
  EXPECT_EQ(CoinSpec::parse(r.to_string()), r);
  EXPECT_LT(max_abs_diff(CoinSpec::parse("rotation:0.7853981633974483").op().matrix(),
                         coin_experimental().matrix()),
            1e-15);
}

TEST(CoinSpec, RejectsUnknownText) {
  for (const char* bad : {"", "Hadamard", "rotation:", "rotation:1x", "rotation:nan", "grover"})
    expect_config_error([&] { (void)CoinSpec::parse(bad); });
}

TEST(OutputFormat, ParseRoundTrip) {
  for (auto f : {OutputFormat::Csv, OutputFormat::Json, OutputFormat::Svg})
    EXPECT_EQ(parse_format(to_string(f)), f);
  expect_config_error([] { (void)parse_format("xml"); });
}

TEST(Defaults, PerCommand) {
  const auto walk = ExperimentConfig::defaults("walk");
  EXPECT_EQ(walk.steps, 150u);
  EXPECT_NEAR(walk.delta_theta, kPi / 10, 1e-15);
  const auto bloch = ExperimentConfig::defaults("bloch");
  EXPECT_DOUBLE_EQ(bloch.sigma, 14.0);
  EXPECT_EQ(bloch.steps, 100u);
  EXPECT_EQ(bloch.t_on, 20u);
  EXPECT_EQ(bloch.t_off, 65u);
  EXPECT_EQ(bloch.coin.kind, CoinSpec::Kind::Hadamard);
  for (const char* cmd : {"walk", "dispersion", "asymptotic", "bloch", "probe", "validate"})
    EXPECT_NO_THROW(ExperimentConfig::defaults(cmd).validate()) << cmd;
  expect_config_error([] { (void)ExperimentConfig::defaults("plot"); });
}

TEST(Json, RoundTripIsLossless) {
  ExperimentConfig c = ExperimentConfig::defaults("bloch");
  c.coin = CoinSpec::parse("rotation:-1.3");
  c.sigma = 0.1 + 0.2;
  c.coin_state = {cplx{0.6, 0.0}, cplx{0.0, -0.8}};
  c.switch_off = SwitchOffMode::Reset;
  c.grid_size = 1024;
  c.seed = 1234567890123ULL;
  c.output = "out.csv";
  c.format = OutputFormat::Svg;
  c.origin = -0.5;
  const json j = c;
  const ExperimentConfig back = json::parse(j.dump()).get<ExperimentConfig>();
  EXPECT_EQ(back, c);
}

TEST(Json, MissingKeysTakeCommandDefaults) {
  const auto c = json{{"command", "bloch"}, {"steps", 120}}.get<ExperimentConfig>();
  EXPECT_EQ(c.steps, 120u);
  EXPECT_DOUBLE_EQ(c.sigma, 14.0);
  EXPECT_EQ(json::object().get<ExperimentConfig>(), ExperimentConfig::defaults("walk"));
}

TEST(Json, RejectsUnknownKeysAndBadTypes) {
  expect_config_error([] { (void)json{{"sigmaa", 1.0}}.get<ExperimentConfig>(); });
  expect_config_error([] { (void)json{{"steps", -5}}.get<ExperimentConfig>(); });
  expect_config_error([] { (void)json{{"steps", 2.5}}.get<ExperimentConfig>(); });
  expect_config_error([] { (void)json{{"sigma", "wide"}}.get<ExperimentConfig>(); });
  expect_config_error([] { (void)json{{"switch_off", "later"}}.get<ExperimentConfig>(); });
  expect_config_error([] { (void)json{{"coin_state", {1, 0}}}.get<ExperimentConfig>(); });
  expect_config_error([] { (void)json::array().get<ExperimentConfig>(); });
}

TEST(Validate, RejectsOutOfRange) {
  const auto base = ExperimentConfig::defaults("walk");
  auto check = [&](auto mutate) {
    ExperimentConfig c = base;
    mutate(c);
    expect_config_error([&] { c.validate(); });
  };
  check([](ExperimentConfig& c) { c.sigma = -1.0; });
  check([](ExperimentConfig& c) { c.sigma = NAN; });
  check([](ExperimentConfig& c) { c.theta = INFINITY; });
  check([](ExperimentConfig& c) { c.grid_size = 63; });
  check([](ExperimentConfig& c) { c.grid_size = 2; });
  check([](ExperimentConfig& c) { c.record_every = 0; });
  check([](ExperimentConfig& c) { c.bins = 0; });
  check([](ExperimentConfig& c) { c.theta_points = 1; });
  check([](ExperimentConfig& c) { c.coin_state = {cplx{0.0}, cplx{0.0}}; });
  check([](ExperimentConfig& c) { c.command = "dispersion", c.format = OutputFormat::Json; });
  check([](ExperimentConfig& c) { c.command = "probe", c.format = OutputFormat::Svg; });
  check([](ExperimentConfig& c) { c.command = "bloch", c.t_on = 70; });
  check([](ExperimentConfig& c) { c.command = "bloch", c.t_off = 200; });
}

TEST(LoadConfig, FileAndErrors) {
  const auto dir = std::filesystem::temp_directory_path();
  const auto good = dir / "nqw_test_config_good.json";
  const auto broken = dir / "nqw_test_config_broken.json";
  {
    std::ofstream(good) << R"({"command": "walk", "coin": "experimental", "sigma": 8, "steps": 10})";
    std::ofstream(broken) << R"({"command": "walk", )";
  }
  const ExperimentConfig c = load_config(good.string());
  EXPECT_EQ(c.coin.kind, CoinSpec::Kind::Experimental);
  EXPECT_DOUBLE_EQ(c.sigma, 8.0);
  EXPECT_EQ(c.steps, 10u);
  expect_config_error([&] { (void)load_config(broken.string()); });
  expect_config_error([&] { (void)load_config((dir / "nqw_no_such_file.json").string()); });
  std::filesystem::remove(good);
  std::filesystem::remove(broken);
}
