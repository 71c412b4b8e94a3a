#include "catsim/cli/commands.hpp"

#include <cstdio>
#include <numbers>
#include <ostream>

#include "catsim/parallel.hpp"

namespace catsim::cli {

namespace {

constexpr int kRateSamples = 181;

/// Decoherence-only visibility |f|^2 for the configured loss.
double decoherenceVisibility(const RunConfig& config) {
  const LossChannel loss = resolveLoss(config);
  switch (loss.kind()) {
    case LossChannel::Kind::None: return 1.0;
    case LossChannel::Kind::BeamSplitter:
      return visibilityFromFactor(beamSplitterFactor(loss.photonsLostPerBeam(), config.params.phi));
    case LossChannel::Kind::Atomic: {
      const double f = atomicFactor(loss.atoms(), loss.epsilon(), config.params.phi);
      return f * f;
    }
  }
  return 1.0;
}

Table rateTable(const RunConfig& config) {
  config.params.validate();
  const double v = decoherenceVisibility(config);
  Table t;
  t.columns = {"sigma1", "sigma2", "R_N"};
  for (double sigma1 : {0.0, std::numbers::pi}) {
    for (int k = 0; k < kRateSamples; ++k) {
      const double sigma2 = 2 * std::numbers::pi * k / (kRateSamples - 1);
      t.rows.push_back({sigma1, sigma2, normalizedRate(sigma1, sigma2, v)});
    }
  }
  t.extra["visibility"] = v;
  return t;
}

Table densityTable(const RunConfig& config) {
  GridSpec grid = GridSpec::defaultFor(config.params);
  if (config.grid) grid = {config.grid->min, config.grid->max, config.grid->min, config.grid->max, config.grid->n,
                           config.grid->n};
  const DensityGrid density = densityGrid(config.params, resolveLoss(config), config.homodyne, grid, config.threads);
  Table t;
  t.columns = {"x1", "x2", "rho"};
  t.rows.reserve(static_cast<std::size_t>(grid.n1) * grid.n2);
  for (Eigen::Index i = 0; i < density.x1.size(); ++i)
    for (Eigen::Index j = 0; j < density.x2.size(); ++j)
      t.rows.push_back({density.x1(i), density.x2(j), density.values(i, j)});
  t.extra["grid"] = {{"x_min", grid.x1Min}, {"x_max", grid.x1Max}, {"n", grid.n1}};
  return t;
}

Table bellTable(const RunConfig& config) {
  const SweepResult result = sweep(bellConfig(config), config.threads);
  Table t;
  t.columns = {"separation_km", "phi", "visibility", "s"};
  for (const auto& r : result.rows) t.rows.push_back({r.separationKm, r.phi, r.visibility, r.s});
  nlohmann::json optima = nlohmann::json::array();
  for (const auto& o : result.optima)
    optima.push_back({{"separation_km", o.separationKm}, {"phi_optimal", o.phiOptimal}, {"s_max", o.sMax}});
  t.extra["optima"] = optima;
  return t;
}

Table sweepTable(const RunConfig& config) {
  const BellSweepConfig bell = bellConfig(config);
  bell.validate();
  std::vector<SeparationOptimum> optima(bell.separationsKm.size());
  parallelFor(optima.size(), config.threads,
              [&](std::size_t i) { optima[i] = optimizePhi(bell, bell.separationsKm[i]); });
  Table t;
  t.columns = {"separation_km", "phi_optimal", "s_max"};
  for (const auto& o : optima) t.rows.push_back({o.separationKm, o.phiOptimal, o.sMax});
  try {
    const auto range = violationRange(bell);
    t.extra["violation_range_km"] = range ? nlohmann::json(*range) : nlohmann::json("no finite cutoff");
  } catch (const NoViolationError&) {
    t.extra["violation_range_km"] = nullptr;
  }
  return t;
}

}  // namespace

Table runFigure(const RunConfig& config) {
  switch (config.command) {
    case Command::Fig4:
    case Command::Fig6: return rateTable(config);
    case Command::Fig8:
    case Command::Fig9:
    case Command::Fig10: return densityTable(config);
    case Command::Fig11: return bellTable(config);
    case Command::Sweep: return sweepTable(config);
    case Command::Check: break;
  }
  throw ConfigError("command '" + commandName(config.command) + "' does not produce a data table");
}

std::string formatNumber(double value) {
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void writeCsv(std::ostream& out, const Table& table) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) out << (c ? "," : "") << table.columns[c];
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << formatNumber(row[c]);
    out << '\n';
  }
}

void writeJson(std::ostream& out, const Table& table) {
  nlohmann::json j = table.extra.is_object() ? table.extra : nlohmann::json::object();
  j["columns"] = table.columns;
  j["rows"] = table.rows;
  out << j.dump(1) << '\n';
}

std::string versionString() {
#ifdef CATSIM_VERSION
  return CATSIM_VERSION;
#else
  return "unknown";
#endif
}

}  // namespace catsim::cli
