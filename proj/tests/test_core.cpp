#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "catsim/core.hpp"
#include "catsim/errors.hpp"
#include "catsim/quadrature.hpp"
#include "oracles.hpp"

using namespace catsim;
using C = std::complex<double>;

namespace {

double absDiff(C a, oracle::LComplex b) {
  return static_cast<double>(std::abs(oracle::LComplex(a.real(), a.imag()) - b));
}

}  // namespace

TEST_CASE("coherent state construction") {
  CHECK(CoherentStated::vacuum().amplitude() == C(0, 0));
  CHECK(CoherentStated::polar(10, 0).meanPhotonNumber() == doctest::Approx(100));
  CHECK_THROWS_AS(CoherentStated(C(NAN, 0)), DomainError);
  CHECK_THROWS_AS(CoherentStated(C(0, INFINITY)), DomainError);
  const auto r = CoherentStated::polar(2, 0.3).rotated(0.2);
  CHECK(std::arg(r.amplitude()) == doctest::Approx(0.5));
  CHECK(std::abs(r.amplitude()) == doctest::Approx(2));
}

TEST_CASE("overlap closed form agrees with the Fock series") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> radius(0, 6), angle(-std::numbers::pi, std::numbers::pi);
  for (int k = 0; k < 200; ++k) {
    const C a = std::polar(radius(rng), angle(rng)), b = std::polar(radius(rng), angle(rng));
    CHECK(absDiff(overlap(CoherentStated(a), CoherentStated(b)), oracle::fockOverlap(a, b)) <= 1e-10);
  }
}

TEST_CASE("overlap agrees with the integral of the wavefunctions") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> radius(0, 5), angle(-std::numbers::pi, std::numbers::pi);
  for (int k = 0; k < 40; ++k) {
    const C a = std::polar(radius(rng), angle(rng)), b = std::polar(radius(rng), angle(rng));
    CHECK(absDiff(overlap(CoherentStated(a), CoherentStated(b)), oracle::integratedOverlap(a, b)) <= 1e-8);
  }
}

TEST_CASE("overlap examples") {
  CHECK(overlap(CoherentStated(C(3, 1)), CoherentStated(C(3, 1))) == C(1, 0));
  CHECK(std::abs(overlap(CoherentStated::vacuum(), CoherentStated(C(2, 0)))) == doctest::Approx(std::exp(-2.0)));
  // Environment states of 250 photons lost with the +-phi shifts.
  const double n = std::sqrt(250.0);
  const C g = overlap(CoherentStated::polar(n, 0.014), CoherentStated::polar(n, -0.014));
  CHECK(std::norm(g) == doctest::Approx(0.8221).epsilon(5e-4));
  // Far-apart states underflow cleanly to zero rather than NaN.
  const C far = overlap(CoherentStated(C(100, 0)), CoherentStated(C(-100, 0)));
  CHECK(far == C(0, 0));
}

TEST_CASE("overlap properties") {
  std::mt19937_64 rng(20130117);
  std::uniform_real_distribution<double> u(-6, 6);
  for (int k = 0; k < 500; ++k) {
    const CoherentStated a(C(u(rng), u(rng))), b(C(u(rng), u(rng)));
    const C ab = overlap(a, b), ba = overlap(b, a);
    CHECK(std::abs(ab - std::conj(ba)) <= 1e-15);
    CHECK(std::abs(ab) <= 1.0);
    const double d = std::norm(a.amplitude() - b.amplitude());
    CHECK(std::abs(std::abs(ab) - std::exp(-d / 2)) <= 1e-14);
  }
}

TEST_CASE("attenuation") {
  const auto split = attenuate(CoherentStated(C(100, 0)), 0.25);
  CHECK(split.kept.amplitude().real() == doctest::Approx(86.6025).epsilon(1e-6));
  CHECK(split.lost.amplitude().real() == doctest::Approx(50));
  CHECK(split.kept.meanPhotonNumber() + split.lost.meanPhotonNumber() == doctest::Approx(10000));
  CHECK_THROWS_AS(attenuate(CoherentStated(C(1, 0)), -0.1), DomainError);
  CHECK_THROWS_AS(attenuate(CoherentStated(C(1, 0)), 1.1), DomainError);
  CHECK(attenuate(CoherentStated(C(1, 2)), 1.0).kept.amplitude() == C(0, 0));

  // Two successive losses compose to g = 1 - (1 - g1)(1 - g2).
  const CoherentStated a(C(7, -3));
  const auto twice = attenuate(attenuate(a, 0.2).kept, 0.3);
  const auto once = attenuate(a, 1 - 0.8 * 0.7);
  CHECK(std::abs(twice.kept.amplitude() - once.kept.amplitude()) <= 1e-14);
}

TEST_CASE("quadrature wavefunction") {
  const auto vac = quadAmplitude(CoherentStated::vacuum(), 0.0, std::numbers::pi / 2);
  CHECK(vac.magnitude() == doctest::Approx(0.75113).epsilon(1e-5));

  SUBCASE("matches the displaced ground state at LO phase 0") {
    const C a(1.3, -0.7);
    for (double x : {-2.0, -0.3, 0.0, 1.1, 2.5}) {
      const C psi = quadAmplitude(CoherentStated(a), x, 0.0).value();
      CHECK(absDiff(psi, oracle::wavefunction(a, x)) <= 1e-14);
    }
  }
  SUBCASE("LO phase rotates the measured quadrature") {
    const C a = std::polar(2.0, 0.4);
    const double theta = 0.9;
    const C lhs = quadAmplitude(CoherentStated(a), 0.7, theta).value();
    const C rhs = quadAmplitude(CoherentStated(a * std::polar(1.0, -theta)), 0.7, 0.0).value();
    CHECK(std::abs(lhs - rhs) <= 1e-15);
  }
  SUBCASE("normalised for any LO phase") {
    const CoherentStated a = CoherentStated::polar(3, 0.7);
    for (double theta : {0.0, 0.5, std::numbers::pi / 2, 2.0}) {
      const double centre = std::sqrt(2.0) * (a.amplitude() * std::polar(1.0, -theta)).real();
      const double total = oracle::simpson<long double>(
          [&](long double x) {
            const double m = quadAmplitude(a, static_cast<double>(x), theta).magnitude();
            return static_cast<long double>(m * m);
          },
          centre - 12, centre + 12, 2000);
      CHECK(std::abs(total - 1) <= 1e-8);
    }
  }
  SUBCASE("log form survives where the direct form underflows") {
    const auto psi = quadAmplitude(CoherentStated(C(0, 100)), 0.0, 0.0);
    CHECK(std::isfinite(psi.logMagnitude));
    CHECK(psi.phase == doctest::Approx(0.0));
  }
}

TEST_CASE("log amplitude arithmetic") {
  const auto a = LogAmplituded::fromComplex(C(0, 2));
  const auto b = LogAmplituded::fromComplex(C(3, 0));
  const C product = (a * b).value();
  CHECK(product.real() == doctest::Approx(0).epsilon(1e-15));
  CHECK(product.imag() == doctest::Approx(6));
  CHECK(a.conj().value().imag() == doctest::Approx(-2));
  CHECK(LogAmplituded{}.magnitude() == 0.0);
}

TEST_CASE("distinguishability bound") {
  // alpha phi = 2 with phi = 0.02.
  const double bound = distinguishErrorBound(100.0, 0.02);
  CHECK(bound == doctest::Approx(std::erfc(100 * std::sin(0.04) / std::sqrt(2.0))));
  CHECK(bound == doctest::Approx(6.4e-5).epsilon(0.05));
  // Gaussian tail integrated numerically: erfc(z) = 2/sqrt(pi) int_z^inf exp(-t^2).
  const long double z = 100 * std::sin(0.04L) / std::sqrt(2.0L);
  const long double tail =
      oracle::simpson<long double>([](long double t) { return std::exp(-t * t); }, z, z + 12, 4000) * 2 /
      std::sqrt(std::numbers::pi_v<long double>);
  CHECK(bound == doctest::Approx(static_cast<double>(tail)).epsilon(1e-9));
}

TEST_CASE("Gauss-Legendre rules") {
  const auto rule = gaussLegendre(16);
  double sum = 0, x8 = 0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    sum += rule.weights[k];
    x8 += rule.weights[k] * std::pow(rule.nodes[k], 8);
  }
  CHECK(sum == doctest::Approx(2));
  CHECK(x8 == doctest::Approx(2.0 / 9));
  const auto comp = compositeGaussLegendre(-3, 5, 1.0);
  double g = 0;
  for (std::size_t k = 0; k < comp.nodes.size(); ++k) g += comp.weights[k] * std::exp(-comp.nodes[k] * comp.nodes[k]);
  CHECK(g == doctest::Approx(std::sqrt(std::numbers::pi) / 2 * (std::erf(5.0) + std::erf(3.0))).epsilon(1e-13));
}
