#include <doctest.h>

#include <cmath>
#include <numbers>
#include <vector>

#include "catsim/errors.hpp"
#include "catsim/homodyne.hpp"
#include "catsim/quadrature.hpp"
#include "density_oracle.hpp"
#include "oracles.hpp"

using namespace catsim;

namespace {

constexpr double kPi = std::numbers::pi;
using L = long double;

InterferometerParams params(double alpha, double phi, double sigma1, double sigma2) {
  InterferometerParams p;
  p.alpha0 = p.beta0 = alpha;
  p.phi = phi;
  p.sigma1 = sigma1;
  p.sigma2 = sigma2;
  return p;
}

L oracleWindowRate(const InterferometerParams& p, double w) {
  return oracle::simpson<L>(
      [&](L x1) {
        return oracle::simpson<L>([&](L x2) { return oracle::density(p.alpha0, p.beta0, p.phi, p.sigma1, p.sigma2, 0, static_cast<double>(x1), static_cast<double>(x2)); },
                                  -w, w, 40);
      },
      -w, w, 40);
}

}  // namespace

TEST_CASE("density matches the explicit oracle") {
  struct Case {
    double alpha, phi, sigma1, sigma2, photonsPerBeam;
  };
  for (const Case c : {Case{100, 0.003, 0, kPi, 0}, Case{100, 0.003, 0.7, 2.1, 0}, Case{30, 0.02, 1.0, 0.2, 0},
                       Case{20, 0.03, 0.4, 3.0, 40}, Case{25, 0.02, 0, kPi, 100}}) {
    const auto p = params(c.alpha, c.phi, c.sigma1, c.sigma2);
    const auto loss = LossChannel::beamSplitter(c.photonsPerBeam);
    const double g = loss.lossFraction(c.alpha);
    for (double x1 : {-1.2, 0.0, 0.4, 1.5})
      for (double x2 : {-0.8, 0.0, 0.9}) {
        const double rho = jointDensity(p, loss, HomodyneConfig{}, x1, x2);
        const double expected = static_cast<double>(oracle::density(p.alpha0, p.beta0, p.phi, p.sigma1, p.sigma2, g, x1, x2));
        CHECK(rho == doctest::Approx(expected).epsilon(1e-9));
      }
  }
}

TEST_CASE("environment matrix") {
  const auto p = params(100, 0.014, 0.3, 1.0);
  const auto e = environmentMatrix(p, LossChannel::fromTotalPhotons(500));
  CHECK((e - e.adjoint()).norm() <= 1e-15);
  const auto terms = enumerateTerms(p);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      if (terms[i].envSign == terms[j].envSign) CHECK(std::abs(e(i, j) - 1.0) <= 1e-15);
      else CHECK(std::abs(e(i, j)) == doctest::Approx(symmetricCrossFactor(250, 0.014)));
    }
  CHECK((environmentMatrix(p, LossChannel::lossless()) - TermMatrix::Ones()).norm() == 0.0);
}

TEST_CASE("density structure at alpha phi = 2") {
  const auto dark = params(100, 0.02, 0, 0);
  const auto bright = params(100, 0.02, 0, kPi);
  const auto grid = GridSpec::defaultFor(dark);
  const auto g0 = densityGrid(dark, LossChannel::lossless(), HomodyneConfig{}, grid);
  const auto gPi = densityGrid(bright, LossChannel::lossless(), HomodyneConfig{}, grid);
  CHECK(jointDensity(dark, LossChannel::lossless(), HomodyneConfig{}, 0, 0) <= 1e-4 * g0.values.maxCoeff());
  CHECK(jointDensity(bright, LossChannel::lossless(), HomodyneConfig{}, 0, 0) ==
        doctest::Approx(gPi.values.maxCoeff()).epsilon(1e-12));
  CHECK(g0.values.minCoeff() >= -1e-14 * g0.values.maxCoeff());

  SUBCASE("far peaks stay finite") {
    const double c = std::sqrt(2.0) * 100 * std::sin(0.04);
    const double rho = jointDensity(dark, LossChannel::lossless(), HomodyneConfig{}, c, -c);
    CHECK(std::isfinite(rho));
    CHECK(rho > 0);
  }
  SUBCASE("loss lifts the central dip") {
    const auto loss = LossChannel::fromTotalPhotons(5800);
    CHECK(jointDensity(dark, loss, HomodyneConfig{}, 0, 0) > 1e-4);
  }
  SUBCASE("zero-phase rate follows sin^2") {
    double peak = 0;
    std::vector<double> rate;
    for (double d : {kPi / 4, kPi / 2, 3 * kPi / 4, kPi}) {
      rate.push_back(zeroPhaseRate(params(100, 0.02, d, 0), LossChannel::lossless(), HomodyneConfig{}));
      peak = std::max(peak, rate.back());
    }
    int k = 0;
    for (double d : {kPi / 4, kPi / 2, 3 * kPi / 4, kPi}) {
      const double s = std::sin(d / 2);
      CHECK(rate[k++] / peak == doctest::Approx(s * s).epsilon(0.01));
    }
  }
}

TEST_CASE("integrated density") {
  const auto rule = compositeGaussLegendre(-16, 16, 1.0);
  for (double d : {0.0, kPi / 2, kPi}) {
    const auto p = params(100, 0.02, d, 0);
    double total = 0;
    for (std::size_t i = 0; i < rule.nodes.size(); ++i)
      for (std::size_t j = 0; j < rule.nodes.size(); ++j)
        total += rule.weights[i] * rule.weights[j] *
                 jointDensity(p, LossChannel::lossless(), HomodyneConfig{}, rule.nodes[i], rule.nodes[j]);
    const double exact = retainedProbability(p, LossChannel::lossless());
    CHECK(total == doctest::Approx(exact).epsilon(1e-10));
    // Neighbouring labels overlap at the e^{-8} level, so the orthogonal value is approached but not reached.
    CHECK(std::abs(exact - (8 - 2 * std::cos(d)) / 64) <= 5e-5);
  }
  // With clearly separated labels the orthogonal value is recovered.
  const auto wide = params(100, 0.05, kPi / 2, 0);
  CHECK(retainedProbability(wide, LossChannel::lossless()) == doctest::Approx(8.0 / 64).epsilon(1e-12));
}

TEST_CASE("fringes at alpha phi = 0.3") {
  const auto p = params(100, 0.003, 0, kPi);
  auto maxima = [&](int direction) {
    std::vector<double> line;
    for (int k = 0; k <= 600; ++k) {
      const double t = -3 + k / 100.0;
      line.push_back(jointDensity(p, LossChannel::lossless(), HomodyneConfig{}, t, direction * t));
    }
    int count = 0;
    for (std::size_t k = 1; k + 1 < line.size(); ++k) count += line[k] > line[k - 1] && line[k] > line[k + 1];
    return count;
  };
  // Labels sit at (net1, net2) in {(0,0), (+-2,0), (0,+-2), (+-2,-+2)}: all structure lies off x1 = x2.
  CHECK(maxima(+1) == 1);
  CHECK(maxima(-1) >= 3);
  // Destructive interference between the central and (+-2, -+2) peaks: the
  // density dips below both neighbours where an incoherent sum would not.
  const double dip = static_cast<double>(oracle::density(p.alpha0, p.beta0, p.phi, p.sigma1, p.sigma2, 0, 0.75, -0.75));
  CHECK(dip < static_cast<double>(oracle::density(p.alpha0, p.beta0, p.phi, p.sigma1, p.sigma2, 0, 1.25, -1.25)));
  CHECK(dip < static_cast<double>(oracle::density(p.alpha0, p.beta0, p.phi, p.sigma1, p.sigma2, 0, 0, 0)));
}

TEST_CASE("exchange symmetry and positivity") {
  for (double g : {0.0, 0.1, 0.29}) {
    const auto loss = LossChannel::fromFraction(g, 100);
    const GridSpec spec{-6, 6, -6, 6, 41, 41};
    const auto p = params(100, 0.01, 0.4, 2.3);
    const auto grid = densityGrid(p, loss, HomodyneConfig{}, spec);
    const double peak = grid.values.maxCoeff();
    CHECK(grid.values.minCoeff() >= -1e-14 * peak);
    // Exchanging the beams exchanges the two interferometer phases.
    const auto swapped = densityGrid(params(100, 0.01, 2.3, 0.4), loss, HomodyneConfig{}, spec);
    CHECK((grid.values - swapped.values.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * peak);
    const auto equal = densityGrid(params(100, 0.01, 1.1, 1.1), loss, HomodyneConfig{}, spec);
    CHECK((equal.values - equal.values.transpose()).cwiseAbs().maxCoeff() <= 1e-12 * equal.values.maxCoeff());
  }
}

TEST_CASE("grid evaluation is independent of thread count") {
  const auto p = params(100, 0.003, 0, kPi);
  const auto spec = GridSpec::defaultFor(p, 81);
  const auto a = densityGrid(p, LossChannel::fromTotalPhotons(100), HomodyneConfig{}, spec, 1);
  const auto b = densityGrid(p, LossChannel::fromTotalPhotons(100), HomodyneConfig{}, spec, 7);
  CHECK((a.values.array() == b.values.array()).all());
  CHECK(a.x1.size() == 81);
  CHECK(a.x1(0) == spec.x1Min);
  CHECK(a.x1(80) == spec.x1Max);
  CHECK(a.values(10, 20) == doctest::Approx(jointDensity(p, LossChannel::fromTotalPhotons(100), HomodyneConfig{},
                                                         a.x1(10), a.x2(20))).epsilon(1e-13));
}

TEST_CASE("visibility") {
  SUBCASE("point evaluation gives full visibility without loss") {
    for (double ap : {0.3, 1.0, 1.5, 2.0})
      CHECK(visibilityViaHomodyne(params(100, ap / 100, 0, 0), LossChannel::lossless(), HomodyneConfig{}) ==
            doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("overlap degrades a finite acceptance window") {
    HomodyneConfig window;
    window.window = 0.5;
    const double v = visibilityViaHomodyne(params(100, 0.003, 0, 0), LossChannel::lossless(), window);
    CHECK(v < 0.99);
    // Oracle: window rate averaged over the common phase, at delta = 0 and pi.
    L dark = 0, bright = 0;
    for (int k = 0; k < 8; ++k) {
      const double s = 2 * kPi * k / 8;
      dark += oracleWindowRate(params(100, 0.003, s, s), 0.5);
      bright += oracleWindowRate(params(100, 0.003, s + kPi, s), 0.5);
    }
    CHECK(v == doctest::Approx(static_cast<double>((bright - dark) / (bright + dark))).epsilon(1e-6));
    CHECK(visibilityViaHomodyne(params(100, 0.02, 0, 0), LossChannel::lossless(), window) ==
          doctest::Approx(1.0).epsilon(1e-3));
  }
  SUBCASE("beam-splitter loss") {
    const double v = visibilityViaHomodyne(params(100, 0.014, 0, 0), LossChannel::fromTotalPhotons(500),
                                           HomodyneConfig{});
    CHECK(v == doctest::Approx(0.822).epsilon(0.01));
    CHECK(v == doctest::Approx(symmetricCrossFactor(250, 0.014)).epsilon(1e-6));
  }
  SUBCASE("phase-averaged rate is a sinusoid in delta") {
    const auto form = acceptanceForm(params(100, 0.01, 0, 0), LossChannel::fromTotalPhotons(1000), HomodyneConfig{});
    const double r0 = phaseAveragedRate(form, 0), rPi = phaseAveragedRate(form, kPi);
    for (double d : {0.3, 1.2, 2.5, 4.0}) {
      const double expected = (r0 + rPi) / 2 - (rPi - r0) / 2 * std::cos(d);
      CHECK(phaseAveragedRate(form, d) == doctest::Approx(expected).epsilon(1e-10));
    }
  }
  SUBCASE("vacuum inputs cancel") {
    const auto vac = params(0, 0.01, 0.3, 1.2);
    CHECK(jointDensity(vac, LossChannel::lossless(), HomodyneConfig{}, 0.1, -0.2) == doctest::Approx(0.0));
    CHECK_THROWS_AS(visibilityViaHomodyne(vac, LossChannel::lossless(), HomodyneConfig{}), NoSignalError);
  }
}

TEST_CASE("configuration errors") {
  HomodyneConfig bad;
  bad.window = -1;
  CHECK_THROWS_AS(bad.validate(), DomainError);
  CHECK_THROWS_AS(GridSpec({1, 0, -1, 1, 11, 11}).validate(), DomainError);
  CHECK_THROWS_AS(GridSpec({-1, 1, -1, 1, 1, 11}).validate(), DomainError);
  CHECK_THROWS_AS(jointDensity(params(100, 2.0, 0, 0), LossChannel::lossless(), HomodyneConfig{}, 0, 0), DomainError);
}
