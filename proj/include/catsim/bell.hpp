#pragma once

#include <optional>
#include <vector>

#include "catsim/homodyne.hpp"

namespace catsim {

/// How the total separation S is split into fiber per beam.
enum class ArmConvention {
  HalfEach,    ///< source midway: S/2 of fiber in each beam
  FullOneArm,  ///< S of fiber in each beam
};

struct BellSweepConfig {
  double alpha0 = 100.0;
  std::vector<double> phiValues;
  std::vector<double> separationsKm;
  double attenuationDbPerKm = 0.15;
  ArmConvention arm = ArmConvention::HalfEach;
  HomodyneConfig homodyne;

  /// phiValues non-empty, strictly increasing, inside (0, pi/4); separations >= 0.
  void validate() const;

  /// Fiber length travelled by each beam for a total separation S.
  double armLengthKm(double separationKm) const;

  /// 25 equally spaced values on [0.002, 0.05].
  static std::vector<double> defaultPhiGrid();
};

struct SweepRow {
  double separationKm;
  double phi;
  double visibility;
  double s;
};

struct SeparationOptimum {
  double separationKm;
  double phiOptimal;
  double sMax;
};

struct SweepResult {
  std::vector<SweepRow> rows;              ///< separation-major, phi-minor
  std::vector<SeparationOptimum> optima;   ///< best grid phi for each separation
};

/// CHSH value of sinusoidal fringes of visibility v at optimal settings: 2 sqrt(2) v.
double chshParameter(double visibility);

/// Homodyne visibility at separation S and phase phi, with fiber attenuation
/// and decoherence applied to both beams.
double sweepVisibility(const BellSweepConfig& config, double separationKm, double phi);

SweepResult sweep(const BellSweepConfig& config, int threads = 1);

/// Best s over config.phiValues at separation S, refined by golden-section
/// search between the neighbours of the best grid point.
SeparationOptimum optimizePhi(const BellSweepConfig& config, double separationKm);

/// Largest separation (to 0.1 km) at which the optimised s still exceeds 2.
/// Returns nullopt if no finite cutoff exists. Throws NoViolationError if
/// even S = 0 fails to violate.
std::optional<double> violationRange(const BellSweepConfig& config);

}  // namespace catsim
