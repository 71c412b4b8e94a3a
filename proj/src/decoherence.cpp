#include "catsim/decoherence.hpp"

#include <cmath>

namespace catsim {

LossChannel LossChannel::beamSplitter(double photonsLostPerBeam) {
  if (!(photonsLostPerBeam >= 0) || !std::isfinite(photonsLostPerBeam))
    throw DomainError("photons lost per beam must be finite and >= 0");
  LossChannel c;
  c.kind_ = Kind::BeamSplitter;
  c.nLost_ = photonsLostPerBeam;
  return c;
}

LossChannel LossChannel::fromTotalPhotons(double photonsLostTotal) {
  return beamSplitter(photonsLostTotal / 2);
}

LossChannel LossChannel::fromFraction(double fraction, double alpha0) {
  if (!(fraction >= 0 && fraction <= 1)) throw DomainError("loss fraction must lie in [0, 1]");
  return beamSplitter(fraction * alpha0 * alpha0);
}

LossChannel LossChannel::atomic(std::int64_t nAtoms, double epsilon) {
  if (nAtoms < 0) throw DomainError("atom count must be >= 0");
  if (!(epsilon >= 0 && epsilon <= 0.1)) throw DomainError("epsilon must lie in [0, 0.1]");
  LossChannel c;
  c.kind_ = Kind::Atomic;
  c.nAtoms_ = nAtoms;
  c.epsilon_ = epsilon;
  return c;
}

double LossChannel::photonsLostPerBeam() const {
  switch (kind_) {
    case Kind::None: return 0.0;
    case Kind::BeamSplitter: return nLost_;
    case Kind::Atomic: return static_cast<double>(nAtoms_) * epsilon_ * epsilon_;
  }
  return 0.0;
}

double LossChannel::lossFraction(double alpha0) const {
  const double n = photonsLostPerBeam();
  if (n == 0) return 0.0;
  const double initial = alpha0 * alpha0;
  if (!(n <= initial)) throw DomainError("cannot lose more photons than the beam carries");
  return n / initial;
}

DecoherenceFactor LossChannel::environmentOverlap(double phi, double fraction, double beamAmplitude) const {
  switch (kind_) {
    case Kind::None: return {};
    case Kind::BeamSplitter: return beamSplitterFactor(fraction * beamAmplitude * beamAmplitude, phi);
    case Kind::Atomic: return {Complex(atomicFactor(nAtoms_, epsilon_, phi), 0.0)};
  }
  return {};
}

DecoherenceFactor beamSplitterFactor(double nLost, double phi) {
  if (!(nLost >= 0)) throw DomainError("nLost must be >= 0");
  const double amplitude = std::sqrt(nLost);
  const auto plus = CoherentStated::polar(amplitude, phi);
  const auto minus = CoherentStated::polar(amplitude, -phi);
  return {overlap(minus, plus)};
}

double atomicFactor(std::int64_t nAtoms, double epsilon, double phi) {
  if (nAtoms < 0) throw DomainError("atom count must be >= 0");
  if (!(epsilon >= 0)) throw DomainError("epsilon must be >= 0");
  if (epsilon > 0.1) throw DomainError("epsilon > 0.1 leaves the perturbative regime");
  const double e2 = epsilon * epsilon;
  const double norm2 = 1.0 + e2 * e2 / 4;  // (1 - e^2/2)^2 + e^2
  const double s = std::sin(phi);
  // Re<a(-phi)|a(+phi)> = [(1 - e^2/2)^2 + e^2 cos 2phi] / norm2 = 1 - 2 e^2 sin^2 phi / norm2
  const double perAtom = -2.0 * e2 * s * s / norm2;
  return std::exp(static_cast<double>(nAtoms) * std::log1p(perAtom));
}

double visibilityFromFactor(const DecoherenceFactor& f) { return std::norm(f.value); }

double symmetricCrossFactor(double nLostPerBeam, double phi) {
  if (!(nLostPerBeam >= 0)) throw DomainError("nLost must be >= 0");
  const double s = std::sin(phi);
  return std::exp(-4.0 * nLostPerBeam * s * s);
}

double fiberLossFraction(double distanceKm, double attenuationDbPerKm) {
  if (!(distanceKm >= 0) || !(attenuationDbPerKm >= 0))
    throw DomainError("fiber length and attenuation must be >= 0");
  return -std::expm1(-attenuationDbPerKm * distanceKm / 10.0 * std::log(10.0));
}

}  // namespace catsim
