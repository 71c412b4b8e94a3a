#include "catsim/interferometer.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <utility>

namespace catsim {

void InterferometerParams::validate() const {
  if (!(alpha0 >= 0) || !std::isfinite(alpha0)) throw DomainError("alpha0 must be finite and >= 0");
  if (!(beta0 >= 0) || !std::isfinite(beta0)) throw DomainError("beta0 must be finite and >= 0");
  if (!(std::abs(phi) < std::numbers::pi / 2)) throw DomainError("phi must lie in (-pi/2, pi/2)");
  if (!std::isfinite(sigma1) || !std::isfinite(sigma2)) throw DomainError("sigma1, sigma2 must be finite");
}

RetainedTerms enumerateTerms(const InterferometerParams& params) {
  const Complex e1 = std::polar(1.0, params.sigma1);
  const Complex e2 = std::polar(1.0, params.sigma2);
  const Complex e12 = e1 * e2;
  static constexpr double k = 1.0 / 8.0;

  auto term = [](Complex c, ShiftPair b1, ShiftPair b2) {
    return StateTerm{c * k, b1, b2, b1.source};
  };
  return RetainedTerms{
      term(e2, {+1, +1}, {-1, -1}),
      term(Complex(-1.0), {+1, +1}, {-1, +1}),
      term(-e12, {+1, -1}, {-1, -1}),
      term(e1, {+1, -1}, {-1, +1}),
      term(-e2, {-1, +1}, {+1, -1}),
      term(Complex(1.0), {-1, +1}, {+1, +1}),
      term(e12, {-1, -1}, {+1, -1}),
      term(-e1, {-1, -1}, {+1, +1}),
  };
}

double idealJointProbability(double sigma1, double sigma2) {
  const double s = std::sin((sigma1 - sigma2) / 2);
  return s * s / 16;
}

double retainedNormSquared(const RetainedTerms& terms) {
  std::map<std::pair<int, int>, Complex> byLabel;
  for (const auto& t : terms) byLabel[{t.beam1.net(), t.beam2.net()}] += t.coefficient;
  double total = 0;
  for (const auto& [label, amplitude] : byLabel) total += std::norm(amplitude);
  return total;
}

double postselectedNorm(double sigma1, double sigma2) {
  return 1.0 / std::sqrt(8.0 - 2.0 * std::cos(sigma1 - sigma2));
}

double conditionalProbability(double sigma1, double sigma2) {
  const double c = std::cos(sigma1 - sigma2);
  return (2.0 - 2.0 * c) / (8.0 - 2.0 * c);
}

double normalizedRate(double sigma1, double sigma2, double visibility) {
  if (!(visibility >= 0 && visibility <= 1)) throw DomainError("visibility must lie in [0, 1]");
  return (1.0 - visibility * std::cos(sigma1 - sigma2)) / (1.0 + visibility);
}

}  // namespace catsim
