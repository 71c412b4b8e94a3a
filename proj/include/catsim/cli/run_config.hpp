#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "catsim/bell.hpp"
#include "catsim/homodyne.hpp"

namespace catsim::cli {

enum class Command { Fig4, Fig6, Fig8, Fig9, Fig10, Fig11, Sweep, Check };
enum class OutputFormat { Csv, Json };

/// Raised for malformed configuration; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Loss as the user specified it, before it is turned into a LossChannel.
struct LossSpec {
  enum class Kind { None, TotalPhotons, PerBeam, Atomic, Fiber };
  Kind kind = Kind::None;
  double photons = 0.0;        ///< TotalPhotons / PerBeam
  std::int64_t nAtoms = 0;     ///< Atomic
  double epsilon = 0.0;        ///< Atomic
  double fiberKm = 0.0;        ///< Fiber: length travelled by each beam (total S for fig11/sweep)
  double dbPerKm = 0.15;       ///< Fiber
};

struct GridOverride {
  double min = -10.0;
  double max = 10.0;
  int n = 201;
};

struct RunConfig {
  Command command = Command::Check;
  InterferometerParams params;
  LossSpec loss;
  HomodyneConfig homodyne;
  std::optional<GridOverride> grid;
  std::vector<double> phiValues;      ///< fig11 / sweep
  std::vector<double> separationsKm;  ///< fig11 / sweep
  ArmConvention arm = ArmConvention::HalfEach;
  std::string output = "-";
  OutputFormat format = OutputFormat::Csv;
  int threads = 1;
};

Command parseCommand(const std::string& name);
std::string commandName(Command command);

/// Configuration with the figure-caption parameters for `command`.
RunConfig defaultsFor(Command command);

/// Overlays a JSON object (snake_case field names) onto `config`.
void applyJson(RunConfig& config, const nlohmann::json& json);

/// Reads and applies a JSON config file.
void applyJsonFile(RunConfig& config, const std::string& path);

/// Loss channel for the interferometer of `config`.
LossChannel resolveLoss(const RunConfig& config);

BellSweepConfig bellConfig(const RunConfig& config);

nlohmann::json toJson(const RunConfig& config);

}  // namespace catsim::cli
