#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "rfe/io.h"
#include "rfe/noise.h"

namespace rfe {

struct CliConfig {
  std::string subcommand;
  double epsilon = 0.1;
  double delta = 0.1;
  std::optional<double> theta;  // nullopt: "random"
  NoiseModel noise = noise::Ideal{};
  std::int64_t trials = 100;
  std::uint64_t seed = 1;
  int workers = 0;
  std::string output;  // empty: stdout
  std::string format;  // json | csv | text, resolved per subcommand
  std::int64_t samples = 0;  // spectrum/run override; 0 uses the bound
  std::string suite = "all";
  std::string family = "ban";
  std::vector<double> grid;
  std::string distance = "line";

  bool operator==(const CliConfig&) const = default;
};

Json config_to_json(const CliConfig& config);
CliConfig config_from_json(const Json& j);

// Throws InvalidInput when a value breaks a downstream precondition.
void validate_config(const CliConfig& config);

enum ExitCode : int { kExitOk = 0, kExitCheckFailed = 1, kExitInvalidInput = 2 };

// Entry point for `rfe <run|sweep|bounds|spectrum|verify> [flags]`.
int dispatch(int argc, const char* const* argv, std::ostream& out,
             std::ostream& err);

}  // namespace rfe
