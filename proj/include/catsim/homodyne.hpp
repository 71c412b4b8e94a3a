#pragma once

// Joint homodyne statistics of the two beams. The retained state is a sum of
// eight products of coherent states; its quadrature density is a Hermitian
// form over those eight terms, weighted by the environment overlaps.

#include <array>
#include <numbers>

#include <Eigen/Dense>

#include "catsim/core.hpp"
#include "catsim/decoherence.hpp"
#include "catsim/interferometer.hpp"

namespace catsim {

struct HomodyneConfig {
  /// Local-oscillator phase; pi/2 centres the zero-net-phase state at x = 0.
  double loPhase = std::numbers::pi / 2;
  /// Half-width of the square acceptance region around the origin; 0 means
  /// the density is evaluated at the origin itself.
  double window = 0.0;

  void validate() const;
};

struct JointTerm {
  Complex coefficient;
  CoherentStated beam1;
  CoherentStated beam2;
  int envSign = 1;
};

using JointTerms = std::array<JointTerm, 8>;
using TermVector = Eigen::Matrix<Complex, 8, 1>;
using TermMatrix = Eigen::Matrix<Complex, 8, 8>;

/// Hermitian form scaled by exp(logScale): value(c) = exp(logScale) * Re(c^H M c).
struct ScaledForm {
  double logScale = 0.0;
  TermMatrix matrix = TermMatrix::Zero();

  double relative(const TermVector& c) const { return (c.adjoint() * matrix * c)(0, 0).real(); }
  double value(const TermVector& c) const { return std::exp(logScale) * relative(c); }
};

/// The eight retained terms with coherent labels attenuated by the loss
/// channel. Loss acts after the source shift and before the analyzer shift.
JointTerms jointAmplitudeTerms(const InterferometerParams& params, const LossChannel& loss,
                               const HomodyneConfig& config);

/// The coefficient vector c_i(sigma1, sigma2) of the eight retained terms.
TermVector coefficientVector(double sigma1, double sigma2);

/// E_ij = <env_i|env_j>: 1 within an environment branch, f1 conj(f2) across.
TermMatrix environmentMatrix(const InterferometerParams& params, const LossChannel& loss);

/// rho(x1, x2) for the configured sigma1, sigma2.
double jointDensity(const InterferometerParams& params, const LossChannel& loss,
                    const HomodyneConfig& config, double x1, double x2);

/// Probability of the retained events integrated over all x1, x2, from the
/// coherent-state overlaps: c^H (G1 o G2 o E) c.
double retainedProbability(const InterferometerParams& params, const LossChannel& loss);

/// Form whose value at c(sigma1, sigma2) is the rate accepted by the
/// configured region (point density or windowed integral).
ScaledForm acceptanceForm(const InterferometerParams& params, const LossChannel& loss,
                          const HomodyneConfig& config);

struct GridSpec {
  double x1Min = -10, x1Max = 10;
  double x2Min = -10, x2Max = 10;
  int n1 = 201, n2 = 201;

  /// Symmetric square covering all three peak families with a 6-unit margin.
  static GridSpec defaultFor(const InterferometerParams& params, int resolution = 201);
  void validate() const;
};

struct DensityGrid {
  Eigen::VectorXd x1;
  Eigen::VectorXd x2;
  Eigen::MatrixXd values;  ///< values(i, j) = rho(x1[i], x2[j])
};

DensityGrid densityGrid(const InterferometerParams& params, const LossChannel& loss,
                        const HomodyneConfig& config, const GridSpec& grid, int threads = 1);

/// Rate of zero-net-phase events: rho(0, 0) for window 0, otherwise the
/// integral of rho over [-w, w]^2.
double zeroPhaseRate(const InterferometerParams& params, const LossChannel& loss,
                     const HomodyneConfig& config);

/// Zero-phase rate at sigma1 - sigma2 = delta averaged over the common phase
/// sigma1. Removes the local single-photon interference, which depends on
/// sigma1 and sigma2 individually, and leaves a pure sinusoid in delta.
/// Returned in the units of form.relative().
double phaseAveragedRate(const ScaledForm& form, double delta);

/// Fringe visibility (Rmax - Rmin)/(Rmax + Rmin) of the phase-averaged rate
/// swept over delta in [0, 2pi). Throws NoSignalError if the rate vanishes.
double visibilityViaHomodyne(const InterferometerParams& params, const LossChannel& loss,
                             const HomodyneConfig& config);

}  // namespace catsim
