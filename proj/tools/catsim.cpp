// catsim: figure data, parameter sweeps and self-checks for nonlocal
// interferometry with phase-entangled coherent states.

#include <chrono>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "catsim/cli/check.hpp"
#include "catsim/cli/commands.hpp"
#include "catsim/cli/run_config.hpp"

namespace {

enum ExitCode { kOk = 0, kCheckFailed = 1, kUsage = 2, kDomain = 3 };

int fail(ExitCode code, const std::string& kind, const std::string& message) {
  nlohmann::json record = {{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
  std::cerr << record.dump() << '\n';
  return code;
}

struct Flags {
  std::string command;
  std::string configPath;
  std::string out;
  std::string format;
  double alpha = 0, phi = 0, sigma1 = 0, sigma2 = 0;
  double lossTotal = 0, lossPerBeam = 0, fiberKm = 0, fiberDb = 0;
  double loPhase = 0, window = 0;
  double gridMin = 0, gridMax = 0;
  int gridN = 0;
  int threads = 1;
};

void writeTable(const catsim::cli::RunConfig& config, const catsim::cli::Table& table, double seconds) {
  using catsim::cli::OutputFormat;
  auto emit = [&](std::ostream& out) {
    if (config.format == OutputFormat::Csv) catsim::cli::writeCsv(out, table);
    else catsim::cli::writeJson(out, table);
  };
  if (config.output == "-") {
    emit(std::cout);
    return;
  }
  std::ofstream out(config.output, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot open output file '" + config.output + "'");
  emit(out);
  if (!out) throw std::ios_base::failure("failed writing '" + config.output + "'");

  nlohmann::json meta = catsim::cli::toJson(config);
  meta["version"] = catsim::cli::versionString();
  meta["wall_time_s"] = seconds;
  meta["columns"] = table.columns;
  meta["rows"] = table.rows.size();
  meta.update(table.extra);
  std::ofstream sidecar(config.output + ".meta.json", std::ios::binary);
  sidecar << meta.dump(2) << '\n';
}

int runChecks(const catsim::cli::RunConfig& config) {
  const auto items = catsim::cli::runChecks();
  bool allPassed = true;
  nlohmann::json report = nlohmann::json::array();
  std::ostringstream text;
  for (const auto& item : items) {
    allPassed = allPassed && item.passed;
    text << (item.passed ? "[PASS] " : "[FAIL] ") << item.name << ": " << item.detail << '\n';
    report.push_back({{"name", item.name}, {"passed", item.passed}, {"detail", item.detail}});
  }
  const std::string body = config.format == catsim::cli::OutputFormat::Json
                               ? nlohmann::json{{"passed", allPassed}, {"items", report}}.dump(2) + "\n"
                               : text.str();
  if (config.output == "-") {
    std::cout << body;
  } else {
    std::ofstream out(config.output, std::ios::binary);
    if (!out) throw std::ios_base::failure("cannot open output file '" + config.output + "'");
    out << body;
  }
  return allPassed ? kOk : kCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace catsim::cli;

  CLI::App app{"Nonlocal interferometry with macroscopic coherent states"};
  app.set_version_flag("--version", versionString());
  Flags f;
  app.add_option("command", f.command, "fig4 | fig6 | fig8 | fig9 | fig10 | fig11 | sweep | check")->required();
  app.add_option("--config", f.configPath, "JSON configuration file");
  auto* out = app.add_option("--out", f.out, "output path ('-' for stdout)");
  auto* format = app.add_option("--format", f.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  auto* alpha = app.add_option("--alpha", f.alpha, "initial amplitude of both beams");
  auto* phi = app.add_option("--phi", f.phi, "nonlinear phase shift (rad)");
  auto* sigma1 = app.add_option("--sigma1", f.sigma1, "phase in interferometer B (rad)");
  auto* sigma2 = app.add_option("--sigma2", f.sigma2, "phase in interferometer C (rad)");
  auto* lossTotal = app.add_option("--loss-total-photons", f.lossTotal, "photons lost, both beams together");
  auto* lossBeam = app.add_option("--loss-per-beam", f.lossPerBeam, "photons lost per beam");
  auto* fiberKm = app.add_option("--fiber-km", f.fiberKm, "fiber length per beam (fig11/sweep: total separation)");
  auto* fiberDb = app.add_option("--fiber-db-per-km", f.fiberDb, "fiber attenuation (dB/km)");
  auto* loPhase = app.add_option("--lo-phase", f.loPhase, "local-oscillator phase (rad)");
  auto* window = app.add_option("--window", f.window, "half-width of the zero-phase acceptance region");
  auto* gridMin = app.add_option("--grid-min", f.gridMin, "lower grid edge, both axes");
  auto* gridMax = app.add_option("--grid-max", f.gridMax, "upper grid edge, both axes");
  auto* gridN = app.add_option("--grid-n", f.gridN, "grid points per axis");
  auto* threads = app.add_option("--threads", f.threads, "worker threads")->check(CLI::PositiveNumber);
  lossTotal->excludes(lossBeam)->excludes(fiberKm);
  lossBeam->excludes(fiberKm);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    return fail(kUsage, "usage", e.what());
  }

  RunConfig config;
  try {
    config = defaultsFor(parseCommand(f.command));
    if (!f.configPath.empty()) applyJsonFile(config, f.configPath);

    if (*out) config.output = f.out;
    if (*format) config.format = f.format == "json" ? OutputFormat::Json : OutputFormat::Csv;
    if (*alpha) config.params.alpha0 = config.params.beta0 = f.alpha;
    if (*phi) {
      config.params.phi = f.phi;
      if (!config.phiValues.empty()) config.phiValues = {f.phi};
    }
    if (*sigma1) config.params.sigma1 = f.sigma1;
    if (*sigma2) config.params.sigma2 = f.sigma2;
    if (*lossTotal) config.loss = {LossSpec::Kind::TotalPhotons, f.lossTotal};
    if (*lossBeam) config.loss = {LossSpec::Kind::PerBeam, f.lossPerBeam};
    if (*fiberKm || *fiberDb) {
      if (config.loss.kind != LossSpec::Kind::Fiber) config.loss = {LossSpec::Kind::Fiber};
      if (*fiberKm) {
        config.loss.fiberKm = f.fiberKm;
        if (!config.separationsKm.empty()) config.separationsKm = {f.fiberKm};
      }
      if (*fiberDb) config.loss.dbPerKm = f.fiberDb;
    }
    if (*loPhase) config.homodyne.loPhase = f.loPhase;
    if (*window) config.homodyne.window = f.window;
    if (*gridMin || *gridMax || *gridN) {
      GridOverride g = config.grid.value_or(GridOverride{});
      if (*gridMin) g.min = f.gridMin;
      if (*gridMax) g.max = f.gridMax;
      if (*gridN) g.n = f.gridN;
      config.grid = g;
    }
    if (*threads) config.threads = f.threads;
  } catch (const ConfigError& e) {
    return fail(kUsage, "config", e.what());
  } catch (const std::exception& e) {
    return fail(kUsage, "config", e.what());
  }

  try {
    if (config.command == Command::Check) return runChecks(config);
    const auto start = std::chrono::steady_clock::now();
    const Table table = runFigure(config);
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    writeTable(config, table, seconds);
  } catch (const ConfigError& e) {
    return fail(kUsage, "config", e.what());
  } catch (const catsim::DomainError& e) {
    return fail(kDomain, "domain", e.what());
  } catch (const catsim::NoSignalError& e) {
    return fail(kDomain, "domain", e.what());
  } catch (const std::ios_base::failure& e) {
    return fail(kUsage, "io", e.what());
  } catch (const std::exception& e) {
    return fail(kDomain, "computation", e.what());
  }
  return kOk;
}
