#include "helpers.hpp"

#include "grushin/error.hpp"
#include "grushin/fields.hpp"
#include "grushin/geometry.hpp"
#include "grushin/quadrature.hpp"

#include <doctest.h>

#include <cmath>

using namespace grushin;
using namespace grushin::testing;

namespace {

// y = 0, so the gauge is |x| = r
Point at_gauge(const GrushinSpace& sp, double r) {
  Point p = Point::origin(sp);
  p.x[0] = r;
  return p;
}

}  // namespace

TEST_SUITE("fields") {

TEST_CASE("smoothstep") {
  CHECK(smoothstep(0.0) == 0.0);
  CHECK(smoothstep(1.0) == 1.0);
  CHECK(smoothstep(0.5) == doctest::Approx(0.5).epsilon(1e-15));
  for (double t = 0.05; t < 1.0; t += 0.05) {
    const double h = 1e-6;
    CHECK(smoothstep_derivative(t) == doctest::Approx((smoothstep(t + h) - smoothstep(t - h)) / (2 * h)).epsilon(1e-6));
  }
}

TEST_CASE("bump profile") {
  const auto u = make_bump(kSpace111, 1.0, 2.0);
  CHECK(u->value(at_gauge(kSpace111, 0.5)) == 1.0);
  CHECK(u->value(at_gauge(kSpace111, 4.0)) == 0.0);
  CHECK(u->support_radius() == 2.0);
  double prev = 1.0;
  // within ~0.03 of either edge the profile is 1 or 0 to double precision
  for (double r = 1.05; r < 1.96; r += 0.01) {
    const double v = u->gauge_value(r);
    CHECK(v > 0.0);
    CHECK(v < 1.0);
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(make_bump(kSpace111, 2.0, 1.0), Error);
}

TEST_CASE("log family") {
  const double eps = 1e-4;
  const auto u = make_log_family(kSpace111, eps, 0.0, 3.0);
  const double edge = std::pow(eps, -1.0) * std::log(1.0 / eps);
  CHECK(u->gauge_value(eps * (1 - 1e-12)) == doctest::Approx(edge).epsilon(1e-9));
  CHECK(u->gauge_value(eps * (1 + 1e-12)) == doctest::Approx(edge).epsilon(1e-9));
  CHECK(u->gauge_value(0.5 * eps) == doctest::Approx(edge).epsilon(1e-15));
  CHECK(u->gauge_value(1.0) == 0.0);
  CHECK(u->gauge_value(3.0) == 0.0);
  CHECK(u->gauge_value(std::sqrt(eps)) == doctest::Approx(460.517018598809).epsilon(1e-12));
  CHECK_THROWS_AS(make_log_family(kSpace111, 1.5, 0.0, 3.0), Error);
}

TEST_CASE("near-extremal Hardy family") {
  const auto u = make_hardy_extremal(kSpace111, 2.0, 0.0, 0.25);
  // pure power inside B_1
  const double e = std::log(u->gauge_value(0.25) / u->gauge_value(0.5)) / std::log(0.5);
  CHECK(e == doctest::Approx(-0.25).epsilon(1e-12));
  CHECK(u->gauge_value(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(u->gauge_value(kDefaultCutRatio) == 0.0);
  CHECK(std::isinf(u->support_radius()) == false);

  // zero exponent: constant one on B_1
  const auto flat = make_hardy_extremal(kSpace111, 2.0, 0.0, 0.5);
  CHECK(flat->gauge_value(0.01) == 1.0);
  CHECK(flat->gauge_value(0.9) == 1.0);
}

TEST_CASE("closed-form partials match finite differences") {
  Rng rng(31);
  FdOptions fd;
  fd.force_fd = true;
  for (const auto& sp : {kSpace111, kSpace2305, kSpace312}) {
    for (const FieldPtr& u : {FieldPtr(make_bump(sp, 1.0, 2.0)), FieldPtr(make_hardy_extremal(sp, 1.5, 0.2, 0.1)),
                              FieldPtr(make_log_family(sp, 1e-2, 0.5, 3.0))}) {
      for (int i = 0; i < 20; ++i) {
        Point p = random_point(sp, rng, 0.05);
        const double r = rho(sp, p);
        const double lam = 0.9 / r * std::exp(rng.uniform(-1.0, 0.8));
        p = dilate(sp, lam, p);
        const auto exact = grushin_gradient(sp, *u, p);
        const auto approx = grushin_gradient(sp, *u, p, fd);
        const double scale = std::max(norm(exact), 1e-3);
        for (size_t j = 0; j < exact.size(); ++j) CHECK(std::fabs(exact[j] - approx[j]) <= 1e-6 * scale);
      }
    }
  }
}

TEST_CASE("bi-radial symmetry and support") {
  Rng rng(8);
  const auto u = make_bump(kSpace2305, 0.5, 1.5);
  for (int i = 0; i < 50; ++i) {
    const Point p = random_point(kSpace2305, rng, 0.01);
    Point q{gaussian_vector(rng, 2), gaussian_vector(rng, 3)};
    const double sx = norm(p.x) / norm(q.x), sy = norm(p.y) / norm(q.y);
    for (double& c : q.x) c *= sx;
    for (double& c : q.y) c *= sy;
    CHECK(u->value(p) == doctest::Approx(u->value(q)).epsilon(1e-12));
    if (rho(kSpace2305, p) > u->support_radius()) CHECK(u->value(p) == 0.0);
  }
}

TEST_CASE("dilated field") {
  const auto u = make_bump(kSpace111, 1.0, 2.0);
  const FieldPtr same = dilate_field(u, 1.0);
  const FieldPtr v = dilate_field(u, 4.0);
  Rng rng(1);
  for (int i = 0; i < 30; ++i) {
    const Point p = random_point(kSpace111, rng, 0.01);
    CHECK(same->value(p) == u->value(p));
    CHECK(v->value(p) == doctest::Approx(u->value(dilate(kSpace111, 4.0, p))).epsilon(1e-14));
  }
  CHECK(v->support_radius() == doctest::Approx(0.5));
  CHECK(v->bi_radial());

  // the gamma r-weighted integral picks up lambda^{-gamma r - Q}
  const double g = 0.5, r = 3.0;
  const auto I = [&](const FieldPtr& f) {
    return integrate_polar(kSpace111, WeightedIntegrand::of_value(f, 0.0, g * r, r), 1e-11).value;
  };
  CHECK(I(v) / I(u) == doctest::Approx(std::pow(4.0, -g * r - kSpace111.Q())).epsilon(1e-9));
}

TEST_CASE("translated field") {
  const auto u = make_bump(kSpace111, 0.5, 1.0);
  const FieldPtr t = translate_field(u, {1.0}, {0.5}, 1.0);
  CHECK_FALSE(t->bi_radial());
  Rng rng(12);
  for (int i = 0; i < 30; ++i) {
    const Point p = random_point(kSpace111, rng, 0.01);
    const Point shifted{{p.x[0] - 1.0}, {p.y[0] - 0.5}};
    CHECK(t->value(p) == u->value(shifted));
  }
  // a large shift keeps the support inside a gauge annulus around lambda rho_0
  const double lambda = 50.0;
  const FieldPtr far = translate_field(u, {1.0}, {0.5}, lambda);
  const Point centre = dilate(kSpace111, lambda, {{1.0}, {0.5}});
  const double rc = rho(kSpace111, centre);
  double lo = kInfinity, hi = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const Point p{{centre.x[0] + rng.uniform(-1.0, 1.0)}, {centre.y[0] + rng.uniform(-0.5, 0.5)}};
    if (far->value(p) == 0.0) continue;
    lo = std::min(lo, rho(kSpace111, p));
    hi = std::max(hi, rho(kSpace111, p));
  }
  CHECK(lo >= rc - 2.0);
  CHECK(hi <= rc + 2.0);
  CHECK_THROWS_AS(translate_field(u, {1.0}, {0.5}, 0.0), Error);
}

TEST_CASE("translation keeps unweighted integrals") {
  const auto u = make_bump(kSpace111, 0.5, 1.0);
  const FieldPtr t = translate_field(u, {3.0}, {1.0}, 1.0);
  const double base = integrate_polar(kSpace111, WeightedIntegrand::of_value(u, 0, 0, 3.0), 1e-10).value;
  const QuadratureResult mc = monte_carlo_full(kSpace111, WeightedIntegrand::of_value(t, 0, 0, 3.0), {{1.9}, {0.4}},
                                               {{4.1}, {1.6}}, 2'000'000, 3);
  CHECK(std::fabs(mc.value - base) <= 4.0 * mc.error_estimate);
}

TEST_CASE("scaled field") {
  const auto u = make_bump(kSpace111, 1.0, 2.0);
  const FieldPtr v = scale_field(u, -3.0);
  const Point p{{0.3}, {0.2}};
  CHECK(v->value(p) == -3.0 * u->value(p));
  const auto gu = grushin_gradient(kSpace111, *u, {{1.3}, {0.2}});
  const auto gv = grushin_gradient(kSpace111, *v, {{1.3}, {0.2}});
  CHECK(gv[0] == doctest::Approx(-3.0 * gu[0]));
  CHECK(gv[1] == doctest::Approx(-3.0 * gu[1]));
}

}  // TEST_SUITE
