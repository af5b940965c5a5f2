#pragma once

#include <vector>

namespace grushin {

// n-point Gauss-Legendre rule on [-1, 1]; nodes ascending
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

// computed once per order by Newton iteration on P_n, then cached (thread-safe)
const GaussLegendreRule& gauss_legendre(int n);

}  // namespace grushin
