#pragma once

#include <cmath>
#include <utility>

namespace catsim {

/// Golden-section search for the maximum of a unimodal fn on [lower, upper].
/// Returns (argmax, max).
template <typename Fn>
std::pair<double, double> goldenMaximize(Fn&& fn, double lower, double upper, double tolerance = 1e-10,
                                         int maxIterations = 200) {
  const double invPhi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lower, b = upper;
  double c = b - invPhi * (b - a);
  double d = a + invPhi * (b - a);
  double fc = fn(c), fd = fn(d);
  for (int it = 0; it < maxIterations && (b - a) > tolerance; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invPhi * (b - a);
      fc = fn(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invPhi * (b - a);
      fd = fn(d);
    }
  }
  return fc >= fd ? std::pair{c, fc} : std::pair{d, fd};
}

}  // namespace catsim
