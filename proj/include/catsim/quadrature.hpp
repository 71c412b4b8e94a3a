#pragma once

#include <Eigen/Dense>

namespace catsim {

struct QuadratureRule {
  Eigen::VectorXd nodes;
  Eigen::VectorXd weights;
};

/// n-point Gauss-Legendre rule on [-1, 1] (Golub-Welsch).
QuadratureRule gaussLegendre(int order);

/// Composite Gauss-Legendre rule on [lower, upper] with panels no wider than maxPanelWidth.
QuadratureRule compositeGaussLegendre(double lower, double upper, double maxPanelWidth, int order = 16);

}  // namespace catsim
