#include "catsim/quadrature.hpp"

#include <cmath>

#include "catsim/errors.hpp"

namespace catsim {

QuadratureRule gaussLegendre(int order) {
  if (order < 1) throw DomainError("quadrature order must be >= 1");
  Eigen::MatrixXd jacobi = Eigen::MatrixXd::Zero(order, order);
  for (int k = 1; k < order; ++k) {
    const double b = k / std::sqrt(4.0 * k * k - 1.0);
    jacobi(k, k - 1) = b;
    jacobi(k - 1, k) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(jacobi);
  QuadratureRule rule;
  rule.nodes = solver.eigenvalues();
  rule.weights = 2.0 * solver.eigenvectors().row(0).transpose().array().square();
  return rule;
}

QuadratureRule compositeGaussLegendre(double lower, double upper, double maxPanelWidth, int order) {
  if (!(upper > lower)) throw DomainError("quadrature interval must be non-empty");
  if (!(maxPanelWidth > 0)) throw DomainError("panel width must be positive");
  const QuadratureRule base = gaussLegendre(order);
  const int panels = std::max(1, static_cast<int>(std::ceil((upper - lower) / maxPanelWidth)));
  const double width = (upper - lower) / panels;
  QuadratureRule rule;
  rule.nodes.resize(panels * order);
  rule.weights.resize(panels * order);
  for (int p = 0; p < panels; ++p) {
    const double mid = lower + (p + 0.5) * width;
    rule.nodes.segment(p * order, order) = (mid + 0.5 * width * base.nodes.array()).matrix();
    rule.weights.segment(p * order, order) = 0.5 * width * base.weights;
  }
  return rule;
}

}  // namespace catsim
