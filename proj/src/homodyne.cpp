#include "catsim/homodyne.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "catsim/golden.hpp"
#include "catsim/parallel.hpp"
#include "catsim/quadrature.hpp"

namespace catsim {

namespace {

constexpr double kTwoPi = 2 * std::numbers::pi;
constexpr int kCommonPhaseSamples = 8;
constexpr int kVisibilitySamples = 128;

struct TermWavefunctions {
  std::array<LogAmplituded, 8> beam1;
  std::array<LogAmplituded, 8> beam2;
};

TermWavefunctions evaluate(const JointTerms& terms, double loPhase, double x1, double x2) {
  TermWavefunctions out;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    out.beam1[i] = quadAmplitude(terms[i].beam1, x1, loPhase);
    out.beam2[i] = quadAmplitude(terms[i].beam2, x2, loPhase);
  }
  return out;
}

/// Exponentiates eight log amplitudes relative to their common maximum.
TermVector scaled(const std::array<LogAmplituded, 8>& logs, double& logScale) {
  logScale = -std::numeric_limits<double>::infinity();
  for (const auto& l : logs) logScale = std::max(logScale, l.logMagnitude);
  TermVector v;
  for (std::size_t i = 0; i < logs.size(); ++i) {
    v(i) = std::isinf(logScale) ? Complex{} : std::polar(std::exp(logs[i].logMagnitude - logScale), logs[i].phase);
  }
  return v;
}

/// G_ij = integral over [-w, w] of conj(psi_i) psi_j, with the log scale split off.
ScaledForm windowGram(const std::array<CoherentStated, 8>& labels, double loPhase, double window) {
  const QuadratureRule rule = compositeGaussLegendre(-window, window, 0.5, 16);
  const Eigen::Index n = rule.nodes.size();
  Eigen::Matrix<double, 8, Eigen::Dynamic> logMag(8, n);
  Eigen::Matrix<double, 8, Eigen::Dynamic> phase(8, n);
  double peak = -std::numeric_limits<double>::infinity();
  for (Eigen::Index k = 0; k < n; ++k) {
    for (int i = 0; i < 8; ++i) {
      const auto psi = quadAmplitude(labels[i], rule.nodes(k), loPhase);
      logMag(i, k) = psi.logMagnitude;
      phase(i, k) = psi.phase;
      peak = std::max(peak, psi.logMagnitude);
    }
  }
  ScaledForm gram;
  gram.logScale = 2 * peak;
  for (Eigen::Index k = 0; k < n; ++k) {
    TermVector v;
    for (int i = 0; i < 8; ++i) v(i) = std::polar(std::exp(logMag(i, k) - peak), phase(i, k));
    gram.matrix.noalias() += rule.weights(k) * (v.conjugate() * v.transpose());
  }
  return gram;
}

ScaledForm pointGram(const std::array<CoherentStated, 8>& labels, double loPhase) {
  std::array<LogAmplituded, 8> logs;
  for (int i = 0; i < 8; ++i) logs[i] = quadAmplitude(labels[i], 0.0, loPhase);
  ScaledForm gram;
  double logScale = 0;
  const TermVector v = scaled(logs, logScale);
  gram.logScale = 2 * logScale;
  gram.matrix = v.conjugate() * v.transpose();
  return gram;
}

TermMatrix overlapGram(const std::array<CoherentStated, 8>& labels) {
  TermMatrix g;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) g(i, j) = overlap(labels[i], labels[j]);
  return g;
}

std::array<CoherentStated, 8> beam1Labels(const JointTerms& terms) {
  std::array<CoherentStated, 8> out;
  for (int i = 0; i < 8; ++i) out[i] = terms[i].beam1;
  return out;
}

std::array<CoherentStated, 8> beam2Labels(const JointTerms& terms) {
  std::array<CoherentStated, 8> out;
  for (int i = 0; i < 8; ++i) out[i] = terms[i].beam2;
  return out;
}

}  // namespace

void HomodyneConfig::validate() const {
  if (!std::isfinite(loPhase)) throw DomainError("local-oscillator phase must be finite");
  if (!(window >= 0) || !std::isfinite(window)) throw DomainError("acceptance window must be finite and >= 0");
}

JointTerms jointAmplitudeTerms(const InterferometerParams& params, const LossChannel& loss,
                               const HomodyneConfig& config) {
  params.validate();
  config.validate();
  const double g = loss.lossFraction(params.alpha0);
  const auto alpha = attenuate(CoherentStated(params.alpha0, 0.0), g).kept;
  const auto beta = attenuate(CoherentStated(params.beta0, 0.0), g).kept;
  const RetainedTerms base = enumerateTerms(params);
  JointTerms out;
  for (std::size_t i = 0; i < base.size(); ++i) {
    const StateTerm& t = base[i];
    out[i] = {t.coefficient, alpha.rotated(params.phi * t.beam1.net()), beta.rotated(params.phi * t.beam2.net()),
              t.envSign};
  }
  return out;
}

TermVector coefficientVector(double sigma1, double sigma2) {
  InterferometerParams p;
  p.sigma1 = sigma1;
  p.sigma2 = sigma2;
  const RetainedTerms terms = enumerateTerms(p);
  TermVector c;
  for (int i = 0; i < 8; ++i) c(i) = terms[i].coefficient;
  return c;
}

TermMatrix environmentMatrix(const InterferometerParams& params, const LossChannel& loss) {
  const double g = loss.lossFraction(params.alpha0);
  const Complex f1 = loss.environmentOverlap(params.phi, g, params.alpha0).value;
  const Complex f2 = loss.environmentOverlap(params.phi, g, params.beta0).value;
  // <gamma-|gamma+><delta+|delta->: branch -1 on the left, +1 on the right.
  const Complex across = f1 * std::conj(f2);
  const RetainedTerms terms = enumerateTerms(params);
  TermMatrix e;
  for (int i = 0; i < 8; ++i) {
    for (int j = 0; j < 8; ++j) {
      const int si = terms[i].envSign, sj = terms[j].envSign;
      if (si == sj) e(i, j) = 1.0;
      else if (si < 0) e(i, j) = across;
      else e(i, j) = std::conj(across);
    }
  }
  return e;
}

double jointDensity(const InterferometerParams& params, const LossChannel& loss, const HomodyneConfig& config,
                    double x1, double x2) {
  const JointTerms terms = jointAmplitudeTerms(params, loss, config);
  const TermMatrix env = environmentMatrix(params, loss);
  const TermWavefunctions psi = evaluate(terms, config.loPhase, x1, x2);
  std::array<LogAmplituded, 8> logs;
  for (int i = 0; i < 8; ++i) logs[i] = LogAmplituded::fromComplex(terms[i].coefficient) * psi.beam1[i] * psi.beam2[i];
  double logScale = 0;
  const TermVector v = scaled(logs, logScale);
  if (std::isinf(logScale)) return 0.0;
  const double rho = (v.adjoint() * env * v)(0, 0).real();
  // env is positive semidefinite, so a negative value is rounding noise.
  return std::exp(2 * logScale) * std::max(rho, 0.0);
}

double retainedProbability(const InterferometerParams& params, const LossChannel& loss) {
  const JointTerms terms = jointAmplitudeTerms(params, loss, HomodyneConfig{});
  const TermMatrix form = overlapGram(beam1Labels(terms)).cwiseProduct(overlapGram(beam2Labels(terms)))
                              .cwiseProduct(environmentMatrix(params, loss));
  const TermVector c = coefficientVector(params.sigma1, params.sigma2);
  return (c.adjoint() * form * c)(0, 0).real();
}

ScaledForm acceptanceForm(const InterferometerParams& params, const LossChannel& loss, const HomodyneConfig& config) {
  const JointTerms terms = jointAmplitudeTerms(params, loss, config);
  const auto labels1 = beam1Labels(terms);
  const auto labels2 = beam2Labels(terms);
  ScaledForm g1, g2;
  if (config.window == 0.0) {
    g1 = pointGram(labels1, config.loPhase);
    g2 = pointGram(labels2, config.loPhase);
  } else {
    g1 = windowGram(labels1, config.loPhase, config.window);
    g2 = windowGram(labels2, config.loPhase, config.window);
  }
  ScaledForm form;
  form.logScale = g1.logScale + g2.logScale;
  form.matrix = g1.matrix.cwiseProduct(g2.matrix).cwiseProduct(environmentMatrix(params, loss));
  return form;
}

void GridSpec::validate() const {
  if (n1 < 2 || n2 < 2) throw DomainError("grid resolution must be >= 2 per axis");
  if (!(x1Max > x1Min) || !(x2Max > x2Min)) throw DomainError("grid ranges must be non-empty and increasing");
  if (!std::isfinite(x1Min) || !std::isfinite(x1Max) || !std::isfinite(x2Min) || !std::isfinite(x2Max))
    throw DomainError("grid ranges must be finite");
}

GridSpec GridSpec::defaultFor(const InterferometerParams& params, int resolution) {
  const double amplitude = std::max(params.alpha0, params.beta0);
  const double half = std::numbers::sqrt2 * amplitude * std::abs(std::sin(2 * params.phi)) + 6.0;
  return {-half, half, -half, half, resolution, resolution};
}

DensityGrid densityGrid(const InterferometerParams& params, const LossChannel& loss, const HomodyneConfig& config,
                        const GridSpec& grid, int threads) {
  grid.validate();
  const JointTerms terms = jointAmplitudeTerms(params, loss, config);
  const TermMatrix env = environmentMatrix(params, loss);
  std::array<LogAmplituded, 8> coefficientLogs;
  for (int i = 0; i < 8; ++i) coefficientLogs[i] = LogAmplituded::fromComplex(terms[i].coefficient);

  DensityGrid out;
  out.x1 = Eigen::VectorXd::LinSpaced(grid.n1, grid.x1Min, grid.x1Max);
  out.x2 = Eigen::VectorXd::LinSpaced(grid.n2, grid.x2Min, grid.x2Max);
  out.values.resize(grid.n1, grid.n2);

  // Beam-2 wavefunctions are shared by every row.
  std::vector<std::array<LogAmplituded, 8>> column(grid.n2);
  for (int j = 0; j < grid.n2; ++j)
    for (int t = 0; t < 8; ++t) column[j][t] = quadAmplitude(terms[t].beam2, out.x2(j), config.loPhase);

  parallelFor(static_cast<std::size_t>(grid.n1), threads, [&](std::size_t row) {
    const auto i = static_cast<Eigen::Index>(row);
    std::array<LogAmplituded, 8> rowLogs;
    for (int t = 0; t < 8; ++t)
      rowLogs[t] = coefficientLogs[t] * quadAmplitude(terms[t].beam1, out.x1(i), config.loPhase);
    for (int j = 0; j < grid.n2; ++j) {
      std::array<LogAmplituded, 8> logs;
      for (int t = 0; t < 8; ++t) logs[t] = rowLogs[t] * column[j][t];
      double logScale = 0;
      const TermVector v = scaled(logs, logScale);
      if (std::isinf(logScale)) {
        out.values(i, j) = 0.0;
        continue;
      }
      const double rho = (v.adjoint() * env * v)(0, 0).real();
      out.values(i, j) = std::exp(2 * logScale) * std::max(rho, 0.0);
    }
  });
  return out;
}

double zeroPhaseRate(const InterferometerParams& params, const LossChannel& loss, const HomodyneConfig& config) {
  const ScaledForm form = acceptanceForm(params, loss, config);
  return std::max(form.value(coefficientVector(params.sigma1, params.sigma2)), 0.0);
}

double phaseAveragedRate(const ScaledForm& form, double delta) {
  // Rate is a trigonometric polynomial of degree 2 in the common phase, so
  // eight equally spaced samples average it exactly.
  double total = 0;
  for (int k = 0; k < kCommonPhaseSamples; ++k) {
    const double sigma1 = kTwoPi * k / kCommonPhaseSamples;
    total += form.relative(coefficientVector(sigma1, sigma1 - delta));
  }
  return total / kCommonPhaseSamples;
}

double visibilityViaHomodyne(const InterferometerParams& params, const LossChannel& loss,
                             const HomodyneConfig& config) {
  const ScaledForm form = acceptanceForm(params, loss, config);
  auto rate = [&](double delta) { return phaseAveragedRate(form, delta); };

  const double step = kTwoPi / kVisibilitySamples;
  int best = 0, worst = 0;
  std::array<double, kVisibilitySamples> samples{};
  for (int k = 0; k < kVisibilitySamples; ++k) {
    samples[k] = rate(k * step);
    if (samples[k] > samples[best]) best = k;
    if (samples[k] < samples[worst]) worst = k;
  }
  const double rMax = std::max(samples[best], goldenMaximize(rate, (best - 1) * step, (best + 1) * step).second);
  const double rMin = std::min(
      samples[worst], -goldenMaximize([&](double d) { return -rate(d); }, (worst - 1) * step, (worst + 1) * step).second);
  const double lo = std::max(rMin, 0.0);
  if (!(rMax > 0)) throw NoSignalError("zero-phase rate vanishes for every phase setting");
  return std::clamp((rMax - lo) / (rMax + lo), 0.0, 1.0);
}

}  // namespace catsim
