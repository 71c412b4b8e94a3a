#pragma once

// Coherent-state algebra. Everything here is templated on the real scalar so
// the same code runs in double for production and long double in tests.

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <utility>

#include "catsim/errors.hpp"

namespace catsim {

template <typename Scalar>
using Amplitude = std::complex<Scalar>;

template <typename Scalar>
bool isFinite(const Amplitude<Scalar>& z) {
  return std::isfinite(z.real()) && std::isfinite(z.imag());
}

/// Single-mode coherent state |a>, labelled by its complex amplitude.
template <typename Scalar>
class CoherentState {
 public:
  CoherentState() = default;
  explicit CoherentState(Amplitude<Scalar> amplitude) : amplitude_(amplitude) {
    if (!isFinite(amplitude)) throw DomainError("coherent-state amplitude must be finite");
  }
  CoherentState(Scalar re, Scalar im) : CoherentState(Amplitude<Scalar>(re, im)) {}

  static CoherentState vacuum() { return CoherentState(); }
  static CoherentState polar(Scalar magnitude, Scalar phase) {
    return CoherentState(std::polar(magnitude, phase));
  }

  const Amplitude<Scalar>& amplitude() const { return amplitude_; }
  Scalar meanPhotonNumber() const { return std::norm(amplitude_); }

  /// Phase-space rotation |a> -> |a e^{i theta}>.
  CoherentState rotated(Scalar theta) const {
    return CoherentState(amplitude_ * std::polar(Scalar(1), theta));
  }

  friend bool operator==(const CoherentState&, const CoherentState&) = default;

 private:
  Amplitude<Scalar> amplitude_{};
};

/// A complex number held as (log |z|, arg z). logMagnitude == -inf encodes zero.
template <typename Scalar>
struct LogAmplitude {
  Scalar logMagnitude = -std::numeric_limits<Scalar>::infinity();
  Scalar phase = 0;

  Scalar magnitude() const { return std::exp(logMagnitude); }
  Amplitude<Scalar> value() const { return std::polar(magnitude(), phase); }
  LogAmplitude conj() const { return {logMagnitude, -phase}; }

  friend LogAmplitude operator*(const LogAmplitude& a, const LogAmplitude& b) {
    return {a.logMagnitude + b.logMagnitude, a.phase + b.phase};
  }

  static LogAmplitude fromComplex(const Amplitude<Scalar>& z) {
    if (z == Amplitude<Scalar>{}) return {};
    return {std::log(std::abs(z)), std::arg(z)};
  }
};

/// <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b).
///
/// The real part of the exponent is evaluated as -|a-b|^2/2, which is the
/// same quantity without the catastrophic cancellation at large amplitudes.
template <typename Scalar>
Amplitude<Scalar> overlap(const CoherentState<Scalar>& a, const CoherentState<Scalar>& b) {
  const Amplitude<Scalar>& x = a.amplitude();
  const Amplitude<Scalar>& y = b.amplitude();
  const Scalar logMagnitude = -std::norm(x - y) / 2;
  const Scalar phase = x.real() * y.imag() - x.imag() * y.real();
  return std::polar(std::exp(logMagnitude), phase);
}

template <typename Scalar>
struct AttenuatedState {
  CoherentState<Scalar> kept;
  CoherentState<Scalar> lost;
};

/// Linear loss of a fraction `fraction` of the photons: |a> -> |sqrt(1-g) a>|sqrt(g) a>.
template <typename Scalar>
AttenuatedState<Scalar> attenuate(const CoherentState<Scalar>& a, Scalar fraction) {
  if (!(fraction >= 0 && fraction <= 1)) throw DomainError("loss fraction must lie in [0, 1]");
  return {CoherentState<Scalar>(std::sqrt(1 - fraction) * a.amplitude()),
          CoherentState<Scalar>(std::sqrt(fraction) * a.amplitude())};
}

/// Quadrature wavefunction psi_a(x) of a coherent state, measured with a local
/// oscillator at phase `loPhase`, returned in log form.
///
/// With a' = a e^{-i loPhase} the exponent is
///   -x^2/2 + sqrt(2) x a' - |a'|^2/2 - a'^2/2,
/// whose real part collapses to -(x - sqrt(2) Re a')^2/2 and whose imaginary
/// part is sqrt(2) x Im a' - Re a' Im a'. Both are used directly so that no
/// intermediate of order |a|^2 is ever exponentiated.
template <typename Scalar>
LogAmplitude<Scalar> quadAmplitude(const CoherentState<Scalar>& a, Scalar x, Scalar loPhase) {
  const Amplitude<Scalar> rotated = a.amplitude() * std::polar(Scalar(1), -loPhase);
  const Scalar sqrt2 = std::numbers::sqrt2_v<Scalar>;
  const Scalar shift = x - sqrt2 * rotated.real();
  const Scalar logNorm = -std::log(std::numbers::pi_v<Scalar>) / 4;
  return {logNorm - shift * shift / 2,
          sqrt2 * x * rotated.imag() - rotated.real() * rotated.imag()};
}

/// Upper bound erfc(alpha |sin 2phi| / sqrt 2) on the error made when a
/// homodyne measurement tries to tell |alpha> from |alpha e^{+-2i phi}>.
template <typename Scalar>
Scalar distinguishErrorBound(Scalar alpha, Scalar phi) {
  if (!(alpha >= 0)) throw DomainError("alpha must be non-negative");
  return std::erfc(alpha * std::abs(std::sin(2 * phi)) / std::numbers::sqrt2_v<Scalar>);
}

using CoherentStated = CoherentState<double>;
using LogAmplituded = LogAmplitude<double>;
using Complex = std::complex<double>;

}  // namespace catsim
