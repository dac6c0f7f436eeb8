#include "nqw/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <set>

#include "nqw/error.hpp"

namespace nqw {

namespace {

[[noreturn]] void bad(const std::string& msg) { throw Error(ErrorKind::Config, msg); }

double parse_number(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    bad("cannot parse " + what + " '" + s + "'");
  }
  if (used != s.size()) bad("trailing characters in " + what + " '" + s + "'");
  return v;
}

std::size_t count_at(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) bad(std::string(key) + " must be a non-negative integer");
  return v.get<std::size_t>();
}

const std::set<std::string> kCommands{"walk", "dispersion", "asymptotic", "bloch", "probe", "validate"};

}  // namespace

CoinSpec CoinSpec::parse(const std::string& text) {
  if (text == "experimental") return {Kind::Experimental, 0.0};
  if (text == "hadamard") return {Kind::Hadamard, 0.0};
  if (text == "identity") return {Kind::Identity, 0.0};
  const std::string prefix = "rotation:";
  if (text.rfind(prefix, 0) == 0) {
    const double a = parse_number(text.substr(prefix.size()), "rotation angle");
    if (!std::isfinite(a)) bad("rotation angle must be finite");
    return {Kind::Rotation, a};
  }
  bad("unknown coin '" + text + "' (experimental|hadamard|identity|rotation:<angle>)");
}

std::string CoinSpec::to_string() const {
  switch (kind) {
    case Kind::Experimental: return "experimental";
    case Kind::Hadamard: return "hadamard";
    case Kind::Identity: return "identity";
    case Kind::Rotation: {
      char buf[40];
      std::snprintf(buf, sizeof buf, "rotation:%.17g", angle);
      return buf;
    }
  }
  return "hadamard";
}

CoinOp CoinSpec::op() const {
  switch (kind) {
    case Kind::Experimental: return coin_experimental();
    case Kind::Hadamard: return coin_hadamard();
    case Kind::Identity: return CoinOp(Mat2::identity());
    case Kind::Rotation: return coin_rotation(angle);
  }
  return coin_hadamard();
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::Csv;
  if (text == "json") return OutputFormat::Json;
  if (text == "svg") return OutputFormat::Svg;
  bad("unknown format '" + text + "' (csv|json|svg)");
}

const char* to_string(OutputFormat f) noexcept {
  switch (f) {
    case OutputFormat::Csv: return "csv";
    case OutputFormat::Json: return "json";
    case OutputFormat::Svg: return "svg";
  }
  return "csv";
}

ExperimentConfig ExperimentConfig::defaults(const std::string& command) {
  if (!kCommands.count(command)) bad("unknown command '" + command + "'");
  ExperimentConfig c;
  c.command = command;
  if (command == "bloch") {
    const BlochConfig b = BlochConfig::reference();
    c.sigma = b.walk.sigma;
    c.steps = b.walk.steps;
    c.delta_theta = b.delta_theta;
    c.t_on = b.t_on;
    c.t_off = b.t_off;
  } else if (command == "probe") {
    c.sigma = 8.0;
    c.steps = 200;
  } else if (command == "asymptotic") {
    c.sigma = 4.0;
  }
  return c;
}

void ExperimentConfig::validate() const {
  if (!kCommands.count(command)) bad("unknown command '" + command + "'");
  if (!std::isfinite(sigma) || sigma < 0.0) bad("sigma must be finite and >= 0");
  if (!std::isfinite(theta) || !std::isfinite(delta_theta) || !std::isfinite(origin))
    bad("angles and origin must be finite");
  if (steps > 1000000) bad("steps must be <= 1000000");
  if (grid_size % 2 != 0) bad("grid_size must be even (0 = automatic)");
  if (grid_size != 0 && grid_size < 4) bad("grid_size must be at least 4");
  if (record_every == 0) bad("record_every must be positive");
  if (bins == 0) bad("bins must be positive");
  if (theta_points < 2) bad("theta_points must be at least 2");
  const double n = std::norm(coin_state[0]) + std::norm(coin_state[1]);
  if (!std::isfinite(n) || n <= 0.0) bad("coin_state must be a nonzero finite spinor");
  if (command == "bloch" && !(t_on <= t_off && t_off <= steps))
    bad("bloch needs t_on <= t_off <= steps");
  if (format == OutputFormat::Json && command != "walk") bad("json output is only available for walk");
  if (format == OutputFormat::Svg && command != "walk" && command != "bloch")
    bad("svg output is only available for walk and bloch");
}

void to_json(nlohmann::json& j, const ExperimentConfig& c) {
  j = nlohmann::json{
      {"command", c.command},
      {"coin", c.coin.to_string()},
      {"sigma", c.sigma},
      {"steps", c.steps},
      {"theta", c.theta},
      {"delta_theta", c.delta_theta},
      {"t_on", c.t_on},
      {"t_off", c.t_off},
      {"switch_off", c.switch_off == SwitchOffMode::Freeze ? "freeze" : "reset"},
      {"coin_state",
       {{c.coin_state[0].real(), c.coin_state[0].imag()},
        {c.coin_state[1].real(), c.coin_state[1].imag()}}},
      {"grid_size", c.grid_size},
      {"seed", c.seed},
      {"output", c.output},
      {"format", to_string(c.format)},
      {"bins", c.bins},
      {"theta_points", c.theta_points},
      {"record_every", c.record_every},
      {"origin", c.origin},
  };
}

void from_json(const nlohmann::json& j, ExperimentConfig& c) {
  if (!j.is_object()) bad("config must be a JSON object");
  static const std::set<std::string> known{
      "command", "coin",      "sigma",  "steps",  "theta", "delta_theta",  "t_on",
      "t_off",   "switch_off", "coin_state", "grid_size", "seed", "output", "format",
      "bins",    "theta_points", "record_every", "origin"};
  for (const auto& [key, _] : j.items())
    if (!known.count(key)) bad("unknown config key '" + key + "'");
  try {
    c = ExperimentConfig::defaults(j.value("command", std::string("walk")));
    if (j.contains("coin")) c.coin = CoinSpec::parse(j.at("coin").get<std::string>());
    if (j.contains("sigma")) c.sigma = j.at("sigma").get<double>();
    if (j.contains("steps")) c.steps = count_at(j, "steps");
    if (j.contains("theta")) c.theta = j.at("theta").get<double>();
    if (j.contains("delta_theta")) c.delta_theta = j.at("delta_theta").get<double>();
    if (j.contains("t_on")) c.t_on = count_at(j, "t_on");
    if (j.contains("t_off")) c.t_off = count_at(j, "t_off");
    if (j.contains("switch_off")) {
      const auto m = j.at("switch_off").get<std::string>();
      if (m == "freeze")
        c.switch_off = SwitchOffMode::Freeze;
      else if (m == "reset")
        c.switch_off = SwitchOffMode::Reset;
      else
        bad("switch_off must be freeze or reset");
    }
    if (j.contains("coin_state")) {
      const auto& s = j.at("coin_state");
      if (!s.is_array() || s.size() != 2) bad("coin_state must be [[re, im], [re, im]]");
      for (std::size_t i = 0; i < 2; ++i) {
        const auto pair = s.at(i).get<std::array<double, 2>>();
        c.coin_state[i] = cplx{pair[0], pair[1]};
      }
    }
    if (j.contains("grid_size")) c.grid_size = count_at(j, "grid_size");
    if (j.contains("seed")) c.seed = count_at(j, "seed");
    if (j.contains("output")) c.output = j.at("output").get<std::string>();
    if (j.contains("format")) c.format = parse_format(j.at("format").get<std::string>());
    if (j.contains("bins")) c.bins = count_at(j, "bins");
    if (j.contains("theta_points")) c.theta_points = count_at(j, "theta_points");
    if (j.contains("record_every")) c.record_every = count_at(j, "record_every");
    if (j.contains("origin")) c.origin = j.at("origin").get<double>();
  } catch (const nlohmann::json::exception& e) {
    bad(std::string("bad config value: ") + e.what());
  }
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot open config file '" + path + "'");
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    bad("config file '" + path + "' is not valid JSON: " + e.what());
  }
  return j.get<ExperimentConfig>();
}

}  // namespace nqw
