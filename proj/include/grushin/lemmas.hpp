#pragma once

#include <cstdint>
#include <vector>

namespace grushin {

// |xi|^{l+1} + l |eta|^{l+1} - (l+1) |eta|^{l-1} <xi, eta>, evaluated in long double.
// Nonnegative, zero exactly when xi = eta.
double lemma_lambda_check(const std::vector<double>& xi, const std::vector<double>& eta, double lambda);

struct LambdaSweepReport {
  std::int64_t samples = 0;
  int dim = 0;
  std::uint64_t seed = 0;
  double min_value = 0;               // over random (xi, eta, lambda)
  double max_equality_residual = 0;   // |value| over xi = eta samples
};

// random xi, eta ~ N(0, I) in R^dim, lambda log-uniform in [1e-2, 10]
LambdaSweepReport lemma_lambda_sweep(std::int64_t n, int dim, std::uint64_t seed);

// D1 = |x1+x2|^p - |x1|^p - p|x1|^{p-2}<x1,x2>,  D2 = |x2|^p - |x1|^p - p|x1|^{p-2}<x1,x2-x1>
struct LemmaPReport {
  double p = 0;
  std::int64_t samples = 0;
  int dim = 0;
  std::uint64_t seed = 0;
  // p <= 2: sup D1/|x2|^p.  p > 2: sup of D1 over the bound p(p-1)/2 (|x1|+|x2|)^{p-2}|x2|^2
  double first_sup = 0;
  // p <= 2: inf D2 (|x1|+|x2|)^{2-p}/|x2-x1|^p.  p > 2: inf D2/|x2-x1|^p
  double second_inf = 0;
  std::int64_t first_bound_violations = 0;  // p > 2 only
  bool finite = true;
  std::int64_t excluded = 0;  // samples with |x1| below the exclusion radius
};

// x1 ~ N(0, I); x2 = 10^u N(0, I) with u uniform in [-3, 3] so both regimes |x2| << |x1| and >> are hit
LemmaPReport lemma_p_probe(double p, std::int64_t n, std::uint64_t seed, int dim = 3);

}  // namespace grushin
