#include "catsim/bell.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "catsim/golden.hpp"
#include "catsim/parallel.hpp"

namespace catsim {

namespace {

constexpr double kCutoffToleranceKm = 0.1;
constexpr double kFarthestSearchKm = 1.0e4;

}  // namespace

void BellSweepConfig::validate() const {
  if (!(alpha0 >= 0) || !std::isfinite(alpha0)) throw DomainError("alpha0 must be finite and >= 0");
  if (phiValues.empty()) throw DomainError("phi grid must be non-empty");
  for (std::size_t i = 0; i < phiValues.size(); ++i) {
    if (!(phiValues[i] > 0 && phiValues[i] < std::numbers::pi / 4)) throw DomainError("phi values must lie in (0, pi/4)");
    if (i > 0 && !(phiValues[i] > phiValues[i - 1])) throw DomainError("phi values must be strictly increasing");
  }
  for (double s : separationsKm)
    if (!(s >= 0) || !std::isfinite(s)) throw DomainError("separations must be finite and >= 0");
  if (!(attenuationDbPerKm >= 0)) throw DomainError("attenuation must be >= 0");
  homodyne.validate();
}

double BellSweepConfig::armLengthKm(double separationKm) const {
  return arm == ArmConvention::HalfEach ? separationKm / 2 : separationKm;
}

std::vector<double> BellSweepConfig::defaultPhiGrid() {
  std::vector<double> grid(25);
  for (int i = 0; i < 25; ++i) grid[i] = 0.002 + (0.05 - 0.002) * i / 24.0;
  return grid;
}

double chshParameter(double visibility) {
  if (!(visibility >= 0 && visibility <= 1)) throw DomainError("visibility must lie in [0, 1]");
  return 2.0 * std::numbers::sqrt2 * visibility;
}

double sweepVisibility(const BellSweepConfig& config, double separationKm, double phi) {
  const double g = fiberLossFraction(config.armLengthKm(separationKm), config.attenuationDbPerKm);
  InterferometerParams params;
  params.alpha0 = config.alpha0;
  params.beta0 = config.alpha0;
  params.phi = phi;
  return visibilityViaHomodyne(params, LossChannel::fromFraction(g, config.alpha0), config.homodyne);
}

SweepResult sweep(const BellSweepConfig& config, int threads) {
  config.validate();
  const std::size_t nPhi = config.phiValues.size();
  SweepResult result;
  result.rows.resize(config.separationsKm.size() * nPhi);
  parallelFor(result.rows.size(), threads, [&](std::size_t k) {
    const double separation = config.separationsKm[k / nPhi];
    const double phi = config.phiValues[k % nPhi];
    const double v = sweepVisibility(config, separation, phi);
    result.rows[k] = {separation, phi, v, chshParameter(v)};
  });
  for (std::size_t s = 0; s < config.separationsKm.size(); ++s) {
    const auto first = result.rows.begin() + static_cast<std::ptrdiff_t>(s * nPhi);
    const auto best = std::max_element(first, first + static_cast<std::ptrdiff_t>(nPhi),
                                       [](const SweepRow& a, const SweepRow& b) { return a.s < b.s; });
    result.optima.push_back({best->separationKm, best->phi, best->s});
  }
  return result;
}

SeparationOptimum optimizePhi(const BellSweepConfig& config, double separationKm) {
  config.validate();
  const auto& grid = config.phiValues;
  std::vector<double> s(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) s[i] = chshParameter(sweepVisibility(config, separationKm, grid[i]));
  const auto best = static_cast<std::size_t>(std::max_element(s.begin(), s.end()) - s.begin());
  SeparationOptimum out{separationKm, grid[best], s[best]};
  if (grid.size() < 2) return out;
  const double lower = grid[best == 0 ? 0 : best - 1];
  const double upper = grid[std::min(best + 1, grid.size() - 1)];
  const auto [phi, value] = goldenMaximize(
      [&](double p) { return chshParameter(sweepVisibility(config, separationKm, p)); }, lower, upper, 1e-7);
  if (value > out.sMax) out = {separationKm, phi, value};
  return out;
}

std::optional<double> violationRange(const BellSweepConfig& config) {
  config.validate();
  auto violates = [&](double separation) { return optimizePhi(config, separation).sMax > 2.0; };
  if (!violates(0.0)) throw NoViolationError("CHSH bound is not violated even at zero separation");
  if (config.attenuationDbPerKm == 0.0) return std::nullopt;

  double lo = 0.0, hi = 1.0;
  while (violates(hi)) {
    lo = hi;
    hi *= 2;
    if (hi > kFarthestSearchKm) return std::nullopt;
  }
  while (hi - lo > kCutoffToleranceKm) {
    const double mid = (lo + hi) / 2;
    (violates(mid) ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace catsim
