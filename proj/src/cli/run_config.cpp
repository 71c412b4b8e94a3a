#include "catsim/cli/run_config.hpp"

#include <fstream>
#include <map>
#include <numbers>

namespace catsim::cli {

namespace {

const std::map<std::string, Command>& commandTable() {
  static const std::map<std::string, Command> table{
      {"fig4", Command::Fig4},   {"fig6", Command::Fig6},   {"fig8", Command::Fig8},
      {"fig9", Command::Fig9},   {"fig10", Command::Fig10}, {"fig11", Command::Fig11},
      {"sweep", Command::Sweep}, {"check", Command::Check},
  };
  return table;
}

template <typename T>
void read(const nlohmann::json& json, const char* key, T& target) {
  if (!json.contains(key)) return;
  try {
    target = json.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

ArmConvention parseArm(const std::string& name) {
  if (name == "half_each") return ArmConvention::HalfEach;
  if (name == "full_one_arm") return ArmConvention::FullOneArm;
  throw ConfigError("unknown arm_convention '" + name + "' (expected half_each or full_one_arm)");
}

void applyLoss(LossSpec& loss, const nlohmann::json& json) {
  if (json.is_null()) {
    loss = {};
    return;
  }
  if (!json.is_object()) throw ConfigError("config field 'loss' must be an object or null");
  std::string kind;
  read(json, "kind", kind);
  LossSpec out;
  if (kind == "none") {
    out.kind = LossSpec::Kind::None;
  } else if (kind == "beam_splitter") {
    if (json.contains("total_photons")) {
      out.kind = LossSpec::Kind::TotalPhotons;
      read(json, "total_photons", out.photons);
    } else {
      out.kind = LossSpec::Kind::PerBeam;
      read(json, "n_lost", out.photons);
    }
  } else if (kind == "atomic") {
    out.kind = LossSpec::Kind::Atomic;
    read(json, "n_atoms", out.nAtoms);
    read(json, "epsilon", out.epsilon);
  } else if (kind == "fiber") {
    out.kind = LossSpec::Kind::Fiber;
    read(json, "km", out.fiberKm);
    read(json, "db_per_km", out.dbPerKm);
  } else {
    throw ConfigError("unknown loss kind '" + kind + "'");
  }
  loss = out;
}

std::vector<double> linspace(double lo, double hi, int n) {
  std::vector<double> out(n);
  for (int i = 0; i < n; ++i) out[i] = lo + (hi - lo) * i / (n - 1);
  return out;
}

}  // namespace

Command parseCommand(const std::string& name) {
  const auto it = commandTable().find(name);
  if (it == commandTable().end()) throw ConfigError("unknown command '" + name + "'");
  return it->second;
}

std::string commandName(Command command) {
  for (const auto& [name, c] : commandTable())
    if (c == command) return name;
  return "?";
}

RunConfig defaultsFor(Command command) {
  RunConfig c;
  c.command = command;
  c.params.alpha0 = 100.0;
  c.params.beta0 = 100.0;
  switch (command) {
    case Command::Fig4:
      c.params.phi = 0.01;
      break;
    case Command::Fig6:
      c.params.phi = 0.01;
      c.loss = {LossSpec::Kind::TotalPhotons, 4000.0};
      break;
    case Command::Fig8:
      c.params.phi = 0.02;
      break;
    case Command::Fig9:
      c.params.phi = 0.003;
      c.params.sigma2 = std::numbers::pi;
      break;
    case Command::Fig10:
      c.params.phi = 0.02;
      c.loss = {LossSpec::Kind::TotalPhotons, 5800.0};
      break;
    case Command::Fig11:
      c.phiValues = BellSweepConfig::defaultPhiGrid();
      c.separationsKm = {0.0, 1.0, 8.2, 20.0, 50.0};
      c.loss.kind = LossSpec::Kind::Fiber;
      break;
    case Command::Sweep:
      c.phiValues = BellSweepConfig::defaultPhiGrid();
      c.separationsKm = {0.0, 1.0, 2.0, 4.0, 6.0, 8.2, 12.0, 20.0};
      c.loss.kind = LossSpec::Kind::Fiber;
      break;
    case Command::Check:
      break;
  }
  return c;
}

void applyJson(RunConfig& config, const nlohmann::json& json) {
  if (!json.is_object()) throw ConfigError("config must be a JSON object");
  if (json.contains("params")) {
    const auto& p = json.at("params");
    read(p, "alpha0", config.params.alpha0);
    read(p, "beta0", config.params.beta0);
    read(p, "phi", config.params.phi);
    read(p, "sigma1", config.params.sigma1);
    read(p, "sigma2", config.params.sigma2);
  }
  if (json.contains("loss")) applyLoss(config.loss, json.at("loss"));
  if (json.contains("homodyne")) {
    const auto& h = json.at("homodyne");
    read(h, "lo_phase", config.homodyne.loPhase);
    read(h, "window", config.homodyne.window);
  }
  if (json.contains("grid")) {
    GridOverride g = config.grid.value_or(GridOverride{});
    read(json.at("grid"), "min", g.min);
    read(json.at("grid"), "max", g.max);
    read(json.at("grid"), "n", g.n);
    config.grid = g;
  }
  if (json.contains("sweep")) {
    const auto& s = json.at("sweep");
    read(s, "phi_values", config.phiValues);
    read(s, "separations_km", config.separationsKm);
    if (s.contains("phi_range")) {
      double lo = 0, hi = 0;
      int n = 0;
      read(s.at("phi_range"), "min", lo);
      read(s.at("phi_range"), "max", hi);
      read(s.at("phi_range"), "n", n);
      if (n < 2) throw ConfigError("phi_range.n must be >= 2");
      config.phiValues = linspace(lo, hi, n);
    }
    if (s.contains("arm_convention")) {
      std::string arm;
      read(s, "arm_convention", arm);
      config.arm = parseArm(arm);
    }
    if (s.contains("attenuation_db_per_km")) {
      config.loss.kind = LossSpec::Kind::Fiber;
      read(s, "attenuation_db_per_km", config.loss.dbPerKm);
    }
  }
  read(json, "output", config.output);
  if (json.contains("format")) {
    std::string format;
    read(json, "format", format);
    if (format == "csv") config.format = OutputFormat::Csv;
    else if (format == "json") config.format = OutputFormat::Json;
    else throw ConfigError("format must be csv or json");
  }
  read(json, "threads", config.threads);
}

void applyJsonFile(RunConfig& config, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  nlohmann::json json;
  try {
    json = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
  }
  if (json.contains("command") && parseCommand(json.at("command").get<std::string>()) != config.command)
    throw ConfigError("config file command does not match the command line");
  applyJson(config, json);
}

LossChannel resolveLoss(const RunConfig& config) {
  const LossSpec& l = config.loss;
  switch (l.kind) {
    case LossSpec::Kind::None: return LossChannel::lossless();
    case LossSpec::Kind::TotalPhotons: return LossChannel::fromTotalPhotons(l.photons);
    case LossSpec::Kind::PerBeam: return LossChannel::beamSplitter(l.photons);
    case LossSpec::Kind::Atomic: return LossChannel::atomic(l.nAtoms, l.epsilon);
    case LossSpec::Kind::Fiber:
      return LossChannel::fromFraction(fiberLossFraction(l.fiberKm, l.dbPerKm), config.params.alpha0);
  }
  return LossChannel::lossless();
}

BellSweepConfig bellConfig(const RunConfig& config) {
  BellSweepConfig b;
  b.alpha0 = config.params.alpha0;
  b.phiValues = config.phiValues;
  b.separationsKm = config.separationsKm;
  b.arm = config.arm;
  b.homodyne = config.homodyne;
  if (config.loss.kind == LossSpec::Kind::Fiber) b.attenuationDbPerKm = config.loss.dbPerKm;
  else if (config.loss.kind == LossSpec::Kind::None) b.attenuationDbPerKm = 0.0;
  else
    throw ConfigError("fig11/sweep take fiber loss only (--fiber-km / --fiber-db-per-km)");
  return b;
}

nlohmann::json toJson(const RunConfig& config) {
  nlohmann::json j;
  j["command"] = commandName(config.command);
  j["params"] = {{"alpha0", config.params.alpha0}, {"beta0", config.params.beta0}, {"phi", config.params.phi},
                 {"sigma1", config.params.sigma1}, {"sigma2", config.params.sigma2}};
  const LossSpec& l = config.loss;
  switch (l.kind) {
    case LossSpec::Kind::None: j["loss"] = {{"kind", "none"}}; break;
    case LossSpec::Kind::TotalPhotons: j["loss"] = {{"kind", "beam_splitter"}, {"total_photons", l.photons}}; break;
    case LossSpec::Kind::PerBeam: j["loss"] = {{"kind", "beam_splitter"}, {"n_lost", l.photons}}; break;
    case LossSpec::Kind::Atomic: j["loss"] = {{"kind", "atomic"}, {"n_atoms", l.nAtoms}, {"epsilon", l.epsilon}}; break;
    case LossSpec::Kind::Fiber: j["loss"] = {{"kind", "fiber"}, {"km", l.fiberKm}, {"db_per_km", l.dbPerKm}}; break;
  }
  j["homodyne"] = {{"lo_phase", config.homodyne.loPhase}, {"window", config.homodyne.window}};
  if (config.grid) j["grid"] = {{"min", config.grid->min}, {"max", config.grid->max}, {"n", config.grid->n}};
  if (!config.phiValues.empty() || !config.separationsKm.empty()) {
    j["sweep"] = {{"phi_values", config.phiValues},
                  {"separations_km", config.separationsKm},
                  {"arm_convention", config.arm == ArmConvention::HalfEach ? "half_each" : "full_one_arm"}};
  }
  j["output"] = config.output;
  j["format"] = config.format == OutputFormat::Csv ? "csv" : "json";
  j["threads"] = config.threads;
  return j;
}

}  // namespace catsim::cli
