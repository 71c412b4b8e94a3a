#include "catsim/cli/check.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "catsim/bell.hpp"
#include "catsim/core.hpp"
#include "catsim/decoherence.hpp"
#include "catsim/homodyne.hpp"
#include "catsim/quadrature.hpp"

namespace catsim::cli {

namespace {

constexpr double kPi = std::numbers::pi;

class Report {
 public:
  void add(std::string name, bool passed, const std::string& detail) {
    items_.push_back({std::move(name), passed, detail});
  }

  /// |value - expected| <= tolerance.
  void near(std::string name, double value, double expected, double tolerance) {
    std::ostringstream detail;
    detail.precision(10);
    detail << "value " << value << ", expected " << expected << " +- " << tolerance;
    add(std::move(name), std::abs(value - expected) <= tolerance, detail.str());
  }

  std::vector<CheckItem> take() { return std::move(items_); }

 private:
  std::vector<CheckItem> items_;
};

CoherentStated randomState(std::mt19937_64& rng, double maxMagnitude) {
  std::uniform_real_distribution<double> radius(0.0, maxMagnitude);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  return CoherentStated::polar(radius(rng), angle(rng));
}

Complex quadratureOverlap(const CoherentStated& a, const CoherentStated& b, double loPhase) {
  const double center = std::numbers::sqrt2 * (a.amplitude() * std::polar(1.0, -loPhase)).real();
  const QuadratureRule rule = compositeGaussLegendre(center - 14, center + 14, 0.5, 20);
  Complex sum{};
  for (Eigen::Index k = 0; k < rule.nodes.size(); ++k) {
    const auto pa = quadAmplitude(a, rule.nodes(k), loPhase);
    const auto pb = quadAmplitude(b, rule.nodes(k), loPhase);
    sum += rule.weights(k) * (pa.conj() * pb).value();
  }
  return sum;
}

void goldenTable(Report& r, const CheckHooks& hooks) {
  r.near("golden.ideal_joint_max", idealJointProbability(0, kPi), 1.0 / 16, 1e-15);
  r.near("golden.chsh_threshold", chshParameter(1 / std::numbers::sqrt2), 2.0, 1e-12);

  const double v82 = visibilityFromFactor(beamSplitterFactor(250, 0.014));
  r.near("golden.visibility(250, 0.014) = 0.8221 +- 5e-4", v82, 0.8221, 5e-4);

  InterferometerParams p;
  p.phi = 0.014;
  const double vHom = visibilityViaHomodyne(p, LossChannel::fromTotalPhotons(500), HomodyneConfig{});
  r.near("golden.homodyne_visibility(500 total, 0.014) = 0.822 +- 0.01", vHom, 0.822, 0.01);

  const double v6 = visibilityFromFactor(beamSplitterFactor(2000, 0.01));
  r.near("golden.fig6_visibility = exp(-0.8)", v6, std::exp(-0.8), 1e-3);
  r.near("golden.fig6_rate_min = 0.380", normalizedRate(0, 0, v6), 0.380, 1e-3);

  for (const auto& [delta, expected] :
       {std::pair{0.0, 1 / std::sqrt(6.0)}, std::pair{kPi / 2, 1 / std::sqrt(8.0)}, std::pair{kPi, 1 / std::sqrt(10.0)}}) {
    InterferometerParams q;
    q.sigma1 = delta;
    // Retained coefficients carry the 1/8 prefactor; c_n normalises the bare sum.
    const double constructed = 1.0 / std::sqrt(64.0 * retainedNormSquared(enumerateTerms(q)));
    const double norm = hooks.postselectedNorm(delta, 0.0);
    std::ostringstream name;
    name << "golden.postselected_norm(delta=" << delta << ")";
    std::ostringstream detail;
    detail.precision(17);
    detail << "c_n " << norm << ", constructed " << constructed << ", closed form " << expected;
    r.add(name.str(), std::abs(norm - constructed) <= 1e-12 && std::abs(norm - expected) <= 1e-12, detail.str());
  }

  r.near("golden.conditional_probability(pi) = 0.4", conditionalProbability(kPi, 0), 0.4, 1e-15);

  for (double alphaPhi : {1.0, 1.5, 2.0}) {
    InterferometerParams q;
    q.phi = alphaPhi / q.alpha0;
    const double v = visibilityViaHomodyne(q, LossChannel::lossless(), HomodyneConfig{});
    std::ostringstream name;
    name << "golden.orthogonal_approximation_within_1pct(alpha*phi=" << alphaPhi << ")";
    r.near(name.str(), v, 1.0, 0.01);
  }
}

void coreInvariants(Report& r) {
  std::mt19937_64 rng(20130117);
  double hermitian = 0, schwarz = 0, law = 0;
  for (int i = 0; i < 100; ++i) {
    const auto a = randomState(rng, 200), b = randomState(rng, 200);
    hermitian = std::max(hermitian, std::abs(overlap(a, b) - std::conj(overlap(b, a))));
    schwarz = std::max(schwarz, std::abs(overlap(a, b)) - 1.0);
    const auto c = randomState(rng, 50), d = randomState(rng, 50);
    const double expected = std::exp(-std::norm(c.amplitude() - d.amplitude()));
    if (expected > 0) law = std::max(law, std::abs(std::norm(overlap(c, d)) / expected - 1));
  }
  r.near("core.overlap_hermitian", hermitian, 0, 1e-15);
  r.add("core.cauchy_schwarz", schwarz <= 1e-15, "max(|<a|b>| - 1) = " + std::to_string(schwarz));
  r.near("core.overlap_magnitude_law", law, 0, 1e-10);

  double completeness = 0;
  for (int i = 0; i < 5; ++i) {
    const auto a = randomState(rng, 5), b = randomState(rng, 5);
    completeness = std::max(completeness, std::abs(quadratureOverlap(a, b, 0.9) - overlap(a, b)));
  }
  r.near("core.quadrature_completeness", completeness, 0, 1e-8);

  const CoherentStated a(3.0, -1.0);
  const auto once = attenuate(attenuate(a, 0.3).kept, 0.2).kept;
  const auto combined = attenuate(a, 1 - 0.7 * 0.8).kept;
  r.near("core.attenuate_composition", std::abs(once.amplitude() - combined.amplitude()), 0, 1e-14);
}

void interferometerInvariants(Report& r) {
  double periodic = 0, symmetric = 0, visibility = 0;
  for (int k = 0; k < 100; ++k) {
    const double d = -4 + 0.08 * k;
    periodic = std::max(periodic, std::abs(idealJointProbability(d, 0) - idealJointProbability(d + 2 * kPi, 0)));
    symmetric = std::max(symmetric, std::abs(idealJointProbability(d, 0.3) - idealJointProbability(0.3, d)));
  }
  for (double v : {0.0, 0.25, 0.4493, 0.9, 1.0}) {
    const double rMax = normalizedRate(kPi, 0, v), rMin = normalizedRate(0, 0, v);
    visibility = std::max(visibility, std::abs((rMax - rMin) / (rMax + rMin) - v));
  }
  r.near("interferometer.periodic", periodic, 0, 1e-15);
  r.near("interferometer.sigma_swap_symmetry", symmetric, 0, 1e-15);
  r.near("interferometer.rate_visibility_roundtrip", visibility, 0, 1e-12);
}

void decoherenceInvariants(Report& r) {
  const auto f1 = beamSplitterFactor(700, 0.012), f2 = beamSplitterFactor(1300, 0.012);
  r.near("decoherence.multiplicativity", std::abs(beamSplitterFactor(2000, 0.012).value - f1.value * f2.value), 0,
         1e-12);

  // |ln|f| + 2 N phi^2| = 2 N (phi^2 - sin^2 phi) <= 2 N phi^4 / 3
  double smallAngle = 0;
  for (double n : {10.0, 250.0, 4000.0})
    for (double phi : {0.001, 0.01, 0.05}) {
      const double gap = std::abs(std::log(beamSplitterFactor(n, phi).magnitude()) + 2 * n * phi * phi);
      smallAngle = std::max(smallAngle, gap - 2 * n * std::pow(phi, 4) / 3);
    }
  r.add("decoherence.small_angle_bound", smallAngle <= 1e-12, "max excess " + std::to_string(smallAngle));

  double equivalence = 0;
  for (double eps : {0.001, 0.005, 0.01})
    for (double nl : {1.0, 250.0, 5000.0})
      for (double phi : {0.005, 0.014, 0.05}) {
        const auto atoms = static_cast<std::int64_t>(std::llround(nl / (eps * eps)));
        const double bs = beamSplitterFactor(static_cast<double>(atoms) * eps * eps, phi).magnitude();
        equivalence = std::max(equivalence, std::abs(atomicFactor(atoms, eps, phi) / bs - 1));
      }
  r.near("decoherence.loss_model_equivalence", equivalence, 0, 1e-3);

  bool saturation = true;
  for (double g = 0; g <= 1.0; g += 0.05)
    saturation = saturation && beamSplitterFactor(g * 1e4, 0.005).magnitude() >= std::exp(-2 * 1e4 * 0.005 * 0.005);
  r.add("decoherence.saturation_bound", saturation, "|f| >= exp(-2 (alpha0 phi)^2) for g in [0, 1]");

  const Complex cross = beamSplitterFactor(250, 0.014).value * std::conj(beamSplitterFactor(250, 0.014).value);
  r.add("decoherence.two_beam_cross_factor_real",
        std::abs(cross.imag()) <= 1e-15 && cross.real() > 0 &&
            std::abs(cross.real() - symmetricCrossFactor(250, 0.014)) <= 1e-14,
        "cross factor " + std::to_string(cross.real()));
}

void homodyneInvariants(Report& r) {
  InterferometerParams p;
  p.phi = 0.01;
  p.sigma1 = 0.7;
  p.sigma2 = 2.2;
  const auto loss = LossChannel::beamSplitter(300);
  const DensityGrid grid = densityGrid(p, loss, HomodyneConfig{}, GridSpec::defaultFor(p, 41));
  const double peak = grid.values.maxCoeff();
  r.add("homodyne.non_negative", grid.values.minCoeff() >= -1e-14 * peak, "min density on a 41x41 grid");

  p.sigma1 = 0.0;
  p.sigma2 = 0.0;
  const DensityGrid sym = densityGrid(p, loss, HomodyneConfig{}, GridSpec::defaultFor(p, 41));
  r.near("homodyne.exchange_symmetry", (sym.values - sym.values.transpose()).cwiseAbs().maxCoeff(), 0,
         1e-12 * sym.values.maxCoeff());
}

void bellInvariants(Report& r) {
  BellSweepConfig config;
  config.phiValues = BellSweepConfig::defaultPhiGrid();
  config.separationsKm = {0, 2, 8, 20};
  const SweepResult result = sweep(config);
  bool monotone = true;
  for (std::size_t i = 1; i < result.optima.size(); ++i)
    monotone = monotone && result.optima[i].sMax <= result.optima[i - 1].sMax + 1e-12;
  r.add("bell.smax_non_increasing", monotone, "separations 0, 2, 8, 20 km");
  bool definition = true;
  for (const auto& row : result.rows) definition = definition && row.s == chshParameter(row.visibility);
  r.add("bell.s_equals_2sqrt2_v", definition, "every sweep row");
}

}  // namespace

std::vector<CheckItem> runChecks(const CheckHooks& hooks) {
  Report report;
  goldenTable(report, hooks);
  coreInvariants(report);
  interferometerInvariants(report);
  decoherenceInvariants(report);
  homodyneInvariants(report);
  bellInvariants(report);
  return report.take();
}

}  // namespace catsim::cli
