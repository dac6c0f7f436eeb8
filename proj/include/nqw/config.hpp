#pragma once

#include <array>
#include <cstdint>
#include <string>

#include <json.hpp>

#include "nqw/core.hpp"
#include "nqw/observables.hpp"

namespace nqw {

/// Textual coin choice: "experimental", "hadamard", "identity" or "rotation:<angle>".
struct CoinSpec {
  enum class Kind { Experimental, Hadamard, Identity, Rotation };
  Kind kind = Kind::Hadamard;
  double angle = 0.0;  ///< rotation only

  static CoinSpec parse(const std::string& text);
  std::string to_string() const;
  CoinOp op() const;
  bool operator==(const CoinSpec&) const = default;
};

enum class OutputFormat { Csv, Json, Svg };

OutputFormat parse_format(const std::string& text);
const char* to_string(OutputFormat f) noexcept;

struct ExperimentConfig {
  std::string command = "walk";
  CoinSpec coin;
  double sigma = 0.0;
  std::size_t steps = 150;
  double theta = 0.0;
  double delta_theta = kPi / 10.0;
  std::size_t t_on = 20;
  std::size_t t_off = 65;
  SwitchOffMode switch_off = SwitchOffMode::Freeze;
  std::array<cplx, 2> coin_state{cplx{1.0}, cplx{0.0}};
  /// 0 picks the command default.
  std::size_t grid_size = 0;
  std::uint64_t seed = 1;
  /// Empty writes to stdout.
  std::string output;
  OutputFormat format = OutputFormat::Csv;
  std::size_t bins = 401;
  std::size_t theta_points = 17;
  std::size_t record_every = 1;
  double origin = 0.0;  ///< phase-space line offset for <N>

  /// Command-specific defaults (the bloch command starts from the sigma = 14 scenario).
  static ExperimentConfig defaults(const std::string& command);

  Spinor spinor() const { return {coin_state[0], coin_state[1]}; }
  /// Throws Error(Config) for out-of-range values or unsupported combinations.
  void validate() const;
  bool operator==(const ExperimentConfig&) const = default;
};

void to_json(nlohmann::json& j, const ExperimentConfig& c);
/// Missing keys keep the defaults of c.command (or "walk"); unknown keys are rejected.
void from_json(const nlohmann::json& j, ExperimentConfig& c);

ExperimentConfig load_config(const std::string& path);

}  // namespace nqw
