#pragma once

#include <array>

#include "catsim/core.hpp"

namespace catsim {

/// Source and analyzer settings of the nonlocal interferometer.
struct InterferometerParams {
  double alpha0 = 100.0;  ///< initial amplitude of laser 1
  double beta0 = 100.0;   ///< initial amplitude of laser 2
  double phi = 0.02;      ///< nonlinear phase shift per Kerr interaction (rad)
  double sigma1 = 0.0;    ///< linear phase in interferometer B (rad)
  double sigma2 = 0.0;    ///< linear phase in interferometer C (rad)

  double deltaSigma() const { return sigma1 - sigma2; }

  /// Throws DomainError if any invariant is violated.
  void validate() const;
};

/// Signs of the two phase shifts a beam picks up: source first, analyzer second.
struct ShiftPair {
  int source = 1;
  int analyzer = 1;

  int net() const { return source + analyzer; }
  friend bool operator==(const ShiftPair&, const ShiftPair&) = default;
};

/// One of the eight retained terms accompanying detectors 1, 3 and 5.
struct StateTerm {
  Complex coefficient;
  ShiftPair beam1;
  ShiftPair beam2;
  int envSign = 1;  ///< equals beam1.source; labels the environment branch under loss
};

using RetainedTerms = std::array<StateTerm, 8>;

RetainedTerms enumerateTerms(const InterferometerParams& params);

/// Joint probability of the 1-3-5 coincidence with zero net phase in both
/// beams, when phase-shifted coherent states are orthogonal: sin^2(d/2)/16.
double idealJointProbability(double sigma1, double sigma2);

/// Norm-squared of the retained state with orthogonal coherent labels, built
/// by summing coefficients that share the same pair of net phases.
double retainedNormSquared(const RetainedTerms& terms);

/// Normalisation constant 1/sqrt(8 - 2 cos(sigma1 - sigma2)) of the state
/// post-selected on detectors 1, 3 and 5.
double postselectedNorm(double sigma1, double sigma2);

/// Probability of zero net phases given that detectors 1, 3 and 5 fired.
double conditionalProbability(double sigma1, double sigma2);

/// Counting rate with its interference term scaled by `visibility`,
/// normalised so that its maximum over sigma1 - sigma2 is 1.
double normalizedRate(double sigma1, double sigma2, double visibility);

}  // namespace catsim
