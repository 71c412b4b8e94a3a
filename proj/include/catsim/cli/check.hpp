#pragma once

#include <functional>
#include <string>
#include <vector>

#include "catsim/interferometer.hpp"

namespace catsim::cli {

struct CheckItem {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// Functions under test that can be swapped out to confirm the suite notices.
struct CheckHooks {
  std::function<double(double, double)> postselectedNorm = catsim::postselectedNorm;
};

/// Module invariants plus the golden-number table.
std::vector<CheckItem> runChecks(const CheckHooks& hooks = {});

}  // namespace catsim::cli
