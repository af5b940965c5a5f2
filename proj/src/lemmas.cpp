#include "grushin/lemmas.hpp"

#include "grushin/error.hpp"
#include "grushin/rng.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace grushin {

namespace {

using LD = long double;

template <class A, class B>
LD dot(const std::vector<A>& a, const std::vector<B>& b) {
  LD s = 0;
  for (size_t i = 0; i < a.size(); ++i) s += static_cast<LD>(a[i]) * static_cast<LD>(b[i]);
  return s;
}

template <class A>
LD length(const std::vector<A>& a) { return std::sqrt(dot(a, a)); }

// |x + h|^p - |x|^p - p |x|^{p-2} <x, h>. Written through expm1/log1p of
// u = (|x + h|^2 - |x|^2) / |x|^2 so that only the second-order remainder cancels
// when |h| << |x|.
LD bregman(const std::vector<double>& x, const std::vector<LD>& h, LD p, LD nx) {
  const LD xh = dot(x, h), hh = dot(h, h), n2 = nx * nx;
  const LD u = (2 * xh + hh) / n2;
  return std::pow(nx, p) * (std::expm1(p / 2 * std::log1p(u)) - p * xh / n2);
}

std::vector<double> gaussian(Rng& rng, int dim, double scale = 1.0) {
  std::vector<double> v(static_cast<size_t>(dim));
  for (double& x : v) x = scale * rng.normal();
  return v;
}

constexpr LD kExclusion = 1e-12L;

}  // namespace

double lemma_lambda_check(const std::vector<double>& xi, const std::vector<double>& eta, double lambda) {
  require(xi.size() == eta.size() && !xi.empty(), ErrorKind::dimension_mismatch, "lemma: xi and eta must share a positive length");
  require(std::isfinite(lambda) && lambda > 0.0, ErrorKind::invalid_argument, "lemma: lambda must be positive");
  const LD l = lambda;
  const LD nx = length(xi), ne = length(eta);
  // (|xi|^{l+1} - |eta|^{l+1}) + (l+1) |eta|^{l-1} <eta, eta - xi>: both parts are
  // exactly zero at xi = eta, and the first is taken through expm1 near |xi| = |eta|
  if (ne == 0) return static_cast<double>(std::pow(nx, l + 1));
  std::vector<LD> gap(eta.size());
  for (size_t i = 0; i < eta.size(); ++i) gap[i] = static_cast<LD>(eta[i]) - xi[i];
  const LD radial = nx == 0 ? -std::pow(ne, l + 1) : std::pow(ne, l + 1) * std::expm1((l + 1) * std::log(nx / ne));
  return static_cast<double>(radial + (l + 1) * std::pow(ne, l - 1) * dot(eta, gap));
}

LambdaSweepReport lemma_lambda_sweep(std::int64_t n, int dim, std::uint64_t seed) {
  require(n >= 1 && dim >= 1, ErrorKind::invalid_argument, "lemma sweep: need n >= 1 and dim >= 1");
  Rng rng(seed);
  LambdaSweepReport rep;
  rep.samples = n;
  rep.dim = dim;
  rep.seed = seed;
  rep.min_value = std::numeric_limits<double>::infinity();
  for (std::int64_t i = 0; i < n; ++i) {
    const double lambda = std::pow(10.0, rng.uniform(-2.0, 1.0));
    const auto xi = gaussian(rng, dim);
    const auto eta = gaussian(rng, dim);
    rep.min_value = std::min(rep.min_value, lemma_lambda_check(xi, eta, lambda));
    rep.max_equality_residual = std::max(rep.max_equality_residual, std::fabs(lemma_lambda_check(xi, xi, lambda)));
  }
  return rep;
}

LemmaPReport lemma_p_probe(double p, std::int64_t n, std::uint64_t seed, int dim) {
  require(std::isfinite(p) && p >= 1.0, ErrorKind::invalid_argument, "lemma probe: p must be >= 1");
  require(n >= 1 && dim >= 1, ErrorKind::invalid_argument, "lemma probe: need n >= 1 and dim >= 1");
  Rng rng(seed);
  LemmaPReport rep;
  rep.p = p;
  rep.samples = n;
  rep.dim = dim;
  rep.seed = seed;
  rep.first_sup = -std::numeric_limits<double>::infinity();
  rep.second_inf = std::numeric_limits<double>::infinity();
  const LD P = p;
  for (std::int64_t i = 0; i < n; ++i) {
    const auto x1 = gaussian(rng, dim);
    const auto x2 = gaussian(rng, dim, std::pow(10.0, rng.uniform(-3.0, 3.0)));
    const LD n1 = length(x1);
    if (n1 < kExclusion) {
      ++rep.excluded;
      continue;
    }
    std::vector<LD> h1(x1.size()), diff(x1.size());
    for (size_t j = 0; j < x1.size(); ++j) {
      h1[j] = x2[j];
      diff[j] = static_cast<LD>(x2[j]) - x1[j];
    }
    const LD n2 = length(x2), nd = length(diff);
    const LD d1 = bregman(x1, h1, P, n1);
    const LD d2 = bregman(x1, diff, P, n1);

    LD first = 0, second = 0;
    if (p <= 2.0) {
      first = d1 / std::pow(n2, P);
      second = d2 * std::pow(n1 + n2, 2 - P) / std::pow(nd, P);
    } else {
      const LD bound = P * (P - 1) / 2 * std::pow(n1 + n2, P - 2) * n2 * n2;
      first = d1 / bound;
      // relative slack for the rounding of two nearly equal sides
      if (d1 > bound * (1 + 1e-12L)) ++rep.first_bound_violations;
      second = d2 / std::pow(nd, P);
    }
    if (!std::isfinite(static_cast<double>(first)) || !std::isfinite(static_cast<double>(second))) {
      rep.finite = false;
      continue;
    }
    rep.first_sup = std::max(rep.first_sup, static_cast<double>(first));
    rep.second_inf = std::min(rep.second_inf, static_cast<double>(second));
  }
  return rep;
}

}  // namespace grushin
