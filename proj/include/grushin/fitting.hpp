#pragma once

#include <vector>

namespace grushin {

struct LinearFit {
  double slope = 0;
  double intercept = 0;
  double r_squared = 0;
};

// ordinary least squares y = slope*x + intercept; R^2 is 1 for a flat exact fit
LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y);

}  // namespace grushin
