#pragma once

#include <cstdint>

#include "catsim/core.hpp"

namespace catsim {

/// Inner product f = <env(-phi)|env(+phi)> of the environment states left
/// behind by the two phase branches of one beam.
struct DecoherenceFactor {
  Complex value{1.0, 0.0};

  double magnitude() const { return std::abs(value); }
};

/// Photon-loss channel attached to each of the two beams.
///
/// nLost is always the mean number of photons lost *per beam*; use
/// fromTotalPhotons() for loss quoted over both beams together.
class LossChannel {
 public:
  enum class Kind { None, BeamSplitter, Atomic };

  LossChannel() = default;

  static LossChannel lossless() { return {}; }
  static LossChannel beamSplitter(double photonsLostPerBeam);
  static LossChannel fromTotalPhotons(double photonsLostTotal);
  /// Beam-splitter loss removing `fraction` of the photons of a beam of amplitude alpha0.
  static LossChannel fromFraction(double fraction, double alpha0);
  static LossChannel atomic(std::int64_t nAtoms, double epsilon);

  Kind kind() const { return kind_; }
  std::int64_t atoms() const { return nAtoms_; }
  double epsilon() const { return epsilon_; }

  /// N_L; for the atomic channel this is N_A * epsilon^2.
  double photonsLostPerBeam() const;

  /// Fraction g = N_L / alpha0^2 of the photons removed from a beam of amplitude alpha0.
  double lossFraction(double alpha0) const;

  /// Environment overlap for one beam of initial amplitude `beamAmplitude`
  /// that loses the fraction `fraction` of its photons.
  DecoherenceFactor environmentOverlap(double phi, double fraction, double beamAmplitude) const;

 private:
  Kind kind_ = Kind::None;
  double nLost_ = 0.0;
  std::int64_t nAtoms_ = 0;
  double epsilon_ = 0.0;
};

/// Exact f = <gamma-|gamma+> = exp(N_L (e^{2i phi} - 1)) for gamma+- = sqrt(N_L) e^{+-i phi}.
DecoherenceFactor beamSplitterFactor(double nLost, double phi);

/// |f| for N_A two-level atoms, each excited with amplitude epsilon.
///
/// Each per-atom state (1 - eps^2/2)|G> + i eps e^{i phi}|E> is renormalised
/// before the inner product is taken, and the real part of the per-atom
/// overlap is kept (its phase is a compensable offset). Requires eps <= 0.1.
double atomicFactor(std::int64_t nAtoms, double epsilon, double phi);

/// v = |f|^2.
double visibilityFromFactor(const DecoherenceFactor& f);

/// Interference-term factor <gamma-|gamma+><delta+|delta-> for two beams
/// losing N_L photons each; equals exp(2 N_L (cos 2phi - 1)).
double symmetricCrossFactor(double nLostPerBeam, double phi);

/// Fraction g = 1 - 10^(-attenuation * distance / 10) lost in a fiber.
double fiberLossFraction(double distanceKm, double attenuationDbPerKm);

}  // namespace catsim
