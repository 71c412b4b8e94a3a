#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "catsim/cli/run_config.hpp"

namespace catsim::cli {

/// Column-oriented numeric output of one command.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  nlohmann::json extra = nlohmann::json::object();  ///< merged into the metadata sidecar
};

/// Computes the data behind a figure or sweep command.
Table runFigure(const RunConfig& config);

/// RFC-4180 CSV, 17 significant digits, LF line endings.
void writeCsv(std::ostream& out, const Table& table);
void writeJson(std::ostream& out, const Table& table);

/// "%.17g" formatting used for every CSV cell.
std::string formatNumber(double value);

std::string versionString();

}  // namespace catsim::cli
