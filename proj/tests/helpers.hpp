#pragma once

#include "grushin/fields.hpp"
#include "grushin/quadrature.hpp"
#include "grushin/rng.hpp"
#include "grushin/space.hpp"

#include <cmath>
#include <functional>
#include <string>
#include <vector>

namespace grushin::testing {

inline const GrushinSpace kSpace111{1, 1, 1.0};
inline const GrushinSpace kSpace2305{2, 3, 0.5};
inline const GrushinSpace kSpace312{3, 1, 2.0};

inline std::vector<double> gaussian_vector(Rng& rng, int n, double scale = 1.0) {
  std::vector<double> v(static_cast<size_t>(n));
  for (double& c : v) c = scale * rng.normal();
  return v;
}

// random point with |x| in roughly [x_min, 3] and |y| of order one
inline Point random_point(const GrushinSpace& sp, Rng& rng, double x_min) {
  Point p{gaussian_vector(rng, sp.d()), gaussian_vector(rng, sp.k())};
  const double target = x_min + (3.0 - x_min) * rng.uniform();
  const double n = norm(p.x);
  for (double& c : p.x) c *= target / n;
  return p;
}

inline double rel_err(double a, double b) { return std::fabs(a - b) / std::fabs(b); }

// indicator of the closed gauge ball of radius R
inline FieldPtr ball_indicator(const GrushinSpace& sp, double R) {
  BiRadialProfile prof;
  prof.value = [sp, R](double s, double t) { return rho_radial(sp, s, t) <= R ? 1.0 : 0.0; };
  prof.gradient = [](double, double) { return RadialGradient{}; };
  prof.support_radius = R;
  prof.smoothness = Smoothness::lipschitz_piecewise;
  prof.name = "ball_indicator";
  return make_bi_radial(sp, std::move(prof));
}

// exp(-|x|^2 - |y|^2) with its profile derivatives
inline FieldPtr gaussian_field(const GrushinSpace& sp) {
  BiRadialProfile prof;
  prof.value = [](double s, double t) { return std::exp(-s * s - t * t); };
  prof.gradient = [](double s, double t) {
    const double e = std::exp(-s * s - t * t);
    return RadialGradient{-2.0 * s * e, -2.0 * t * e};
  };
  prof.name = "gaussian";
  return make_bi_radial(sp, std::move(prof));
}

// g(rho) as a bi-radial profile, derivatives by the chain rule
inline FieldPtr gauge_profile(const GrushinSpace& sp, std::function<double(double)> g, std::function<double(double)> dg,
                       double support, std::vector<double> breaks, OriginBehavior origin, std::string name) {
  BiRadialProfile prof;
  const double mu = sp.mu();
  prof.value = [sp, g](double s, double t) { return g(rho_radial(sp, s, t)); };
  prof.gradient = [sp, dg, mu](double s, double t) {
    const double r = rho_radial(sp, s, t);
    if (r == 0.0) return RadialGradient{};
    const double d = dg(r);
    return RadialGradient{d * std::pow(s / r, 1.0 + 2.0 * mu), d * (1.0 + mu) * t / std::pow(r, 1.0 + 2.0 * mu)};
  };
  prof.support_radius = support;
  prof.breakpoints = std::move(breaks);
  prof.origin = origin;
  prof.name = std::move(name);
  return make_bi_radial(sp, std::move(prof));
}

// identically zero on a neighbourhood of the origin: any power bound holds
inline constexpr OriginBehavior kVanishing{50.0, 50.0, true};

// bump(1, 2) minus bump(1/4, 1/2): zero on B_{1/4}
inline FieldPtr ring_field(const GrushinSpace& sp) {
  const auto outer = make_bump(sp, 1.0, 2.0), inner = make_bump(sp, 0.25, 0.5);
  return gauge_profile(
      sp, [outer, inner](double r) { return outer->gauge_value(r) - inner->gauge_value(r); },
      [outer, inner](double r) { return outer->gauge_derivative(r) - inner->gauge_derivative(r); }, 2.0,
      {0.25, 0.5, 1.0, 2.0}, kVanishing, "ring(0.25,0.5,1,2)");
}

// the Gaussian has unbounded support; beyond rho = 12 its mass is below e^-72
// on every space used here
inline QuadratureOptions gaussian_region() {
  QuadratureOptions o;
  o.region.rho_max = 12.0;
  return o;
}

}  // namespace grushin::testing
