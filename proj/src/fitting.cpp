#include "grushin/fitting.hpp"

#include "grushin/error.hpp"

#include <algorithm>
#include <cmath>

namespace grushin {

LinearFit fit_line(const std::vector<double>& x, const std::vector<double>& y) {
  require(x.size() == y.size() && x.size() >= 2, ErrorKind::invalid_argument, "fit_line: need >= 2 paired samples");
  const double n = static_cast<double>(x.size());
  double mx = 0, my = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0, sxy = 0, syy = 0, spread = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    sxx += (x[i] - mx) * (x[i] - mx);
    sxy += (x[i] - mx) * (y[i] - my);
    syy += (y[i] - my) * (y[i] - my);
    spread = std::max(spread, std::fabs(y[i] - my));
  }
  require(sxx > 0.0, ErrorKind::invalid_argument, "fit_line: x values must not all coincide");
  LinearFit fit;
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss_res = 0;
  for (size_t i = 0; i < x.size(); ++i) {
    const double r = y[i] - (fit.slope * x[i] + fit.intercept);
    ss_res += r * r;
  }
  // a flat series is a perfect fit of slope 0; rounding noise must not read as scatter
  fit.r_squared = spread <= 1e-9 * std::max(1.0, std::fabs(my)) ? 1.0 : 1.0 - ss_res / syy;
  return fit;
}

}  // namespace grushin
