#include "helpers.hpp"

#include "grushin/error.hpp"
#include "grushin/fields.hpp"
#include "grushin/geometry.hpp"

#include <doctest.h>

#include <cmath>

using namespace grushin;
using namespace grushin::testing;

TEST_SUITE("geometry") {

TEST_CASE("homogeneous dimension") {
  CHECK(kSpace111.Q() == 3.0);
  CHECK(kSpace2305.Q() == 2.0 + 1.5 * 3);
  CHECK(kSpace312.Q() == 6.0);
  CHECK_THROWS_AS(GrushinSpace(0, 1, 1.0), Error);
  CHECK_THROWS_AS(GrushinSpace(1, 1, 0.0), Error);
  CHECK_NOTHROW(GrushinSpace(1, 1, 0.25));
}

TEST_CASE("gauge values") {
  CHECK(rho(kSpace111, {{0.0}, {0.0}}) == 0.0);
  CHECK(rho(kSpace111, {{2.0}, {0.0}}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(rho(kSpace111, {{-2.0}, {0.0}}) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(rho(kSpace111, {{0.0}, {1.0}}) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
  CHECK(rho_radial(kSpace111, 0.0, 1.0) == doctest::Approx(std::sqrt(2.0)).epsilon(1e-15));
}

TEST_CASE("dimension mismatch is reported") {
  try {
    (void)rho(kSpace111, {{1.0, 2.0}, {0.0}});
    FAIL("expected an error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::dimension_mismatch);
  }
}

TEST_CASE("dilation") {
  const Point p = dilate(kSpace111, 2.0, {{1.0}, {1.0}});
  CHECK(p.x == std::vector<double>{2.0});
  CHECK(p.y == std::vector<double>{4.0});
  const Point id = dilate(kSpace2305, 1.0, {{0.3, -1.0}, {1.0, 2.0, 3.0}});
  CHECK(id.x == std::vector<double>{0.3, -1.0});
  CHECK(id.y == std::vector<double>{1.0, 2.0, 3.0});
  CHECK_THROWS_AS(dilate(kSpace111, 0.0, {{1.0}, {1.0}}), Error);

  const Point q{{1.0}, {1.0}};
  CHECK(rho(kSpace111, q) == doctest::Approx(std::pow(5.0, 0.25)).epsilon(1e-15));
  CHECK(rho(kSpace111, dilate(kSpace111, 3.0, q)) == doctest::Approx(std::pow(405.0, 0.25)).epsilon(1e-14));
  CHECK(rho(kSpace111, dilate(kSpace111, 3.0, q)) == doctest::Approx(3.0 * std::pow(5.0, 0.25)).epsilon(1e-14));
}

TEST_CASE("gauge is degree-one homogeneous on every space") {
  Rng rng(11);
  for (const auto& sp : {kSpace111, kSpace2305, kSpace312}) {
    for (int i = 0; i < 50; ++i) {
      const Point p = random_point(sp, rng, 1e-3);
      const double lambda = std::exp(rng.uniform(-3.0, 3.0));
      CHECK(rel_err(rho(sp, dilate(sp, lambda, p)), lambda * rho(sp, p)) < 1e-13);
    }
  }
}

TEST_CASE("gradient of coordinate functions") {
  PointProfile x1;
  x1.value = [](const Point& p) { return p.x[0]; };
  const FieldPtr u = make_point_field(kSpace111, x1);
  for (double x : {0.5, 2.0, -1.5}) {
    const auto g = grushin_gradient(kSpace111, *u, {{x}, {0.7}});
    CHECK(g[0] == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(std::fabs(g[1]) < 1e-9);
  }

  PointProfile y1;
  y1.value = [](const Point& p) { return p.y[0]; };
  y1.partials = [](const Point&) { return std::vector<double>{0.0, 1.0}; };
  const FieldPtr v = make_point_field(kSpace111, y1);
  const auto g = grushin_gradient(kSpace111, *v, {{2.0}, {0.3}});
  CHECK(g[0] == 0.0);
  CHECK(g[1] == doctest::Approx(2.0).epsilon(1e-15));
  FdOptions fd;
  fd.force_fd = true;
  const auto gfd = grushin_gradient(kSpace111, *v, {{2.0}, {0.3}}, fd);
  CHECK(std::fabs(gfd[0]) < 1e-9);
  CHECK(gfd[1] == doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("finite differences refuse points too close to x = 0") {
  const FieldPtr r = make_gauge_power(kSpace111, 1.0);
  FdOptions fd;
  fd.force_fd = true;
  CHECK_THROWS_AS(grushin_gradient(kSpace111, *r, {{1e-5}, {0.5}}, fd), Error);
}

TEST_CASE("norm of the gauge gradient") {
  Rng rng(2024);
  FdOptions fd;
  fd.force_fd = true;
  for (const auto& sp : {kSpace111, kSpace2305, kSpace312}) {
    const FieldPtr r = make_gauge_power(sp, 1.0);
    double worst_fd = 0.0, worst_exact = 0.0;
    for (int i = 0; i < 100; ++i) {
      const Point p = random_point(sp, rng, 1e-3);
      const double rh = rho(sp, p);
      const double want = std::pow(norm(p.x) / rh, sp.mu());
      worst_exact = std::max(worst_exact, rel_err(norm(grushin_gradient(sp, *r, p)), want));
      worst_fd = std::max(worst_fd, rel_err(norm(grushin_gradient(sp, *r, p, fd)), want));
    }
    CAPTURE(sp.Q());
    CHECK(worst_exact < 1e-13);
    CHECK(worst_fd < 1e-6);
  }
}

TEST_CASE("sub-Laplacian of a quadratic") {
  PointProfile sq;
  sq.value = [](const Point& p) { return p.x[0] * p.x[0]; };
  sq.value_ext = [](const ExtPoint& p) { return p.x[0] * p.x[0]; };
  for (const auto& sp : {kSpace111, kSpace2305, kSpace312}) {
    const FieldPtr u = make_point_field(sp, sq);
    Rng rng(5);
    const Point p = random_point(sp, rng, 0.1);
    CHECK(fd_grushin_laplacian(sp, *u, p, 1e-2) == doctest::Approx(2.0).epsilon(1e-8));
  }
}

TEST_CASE("sub-Laplacian of the gauge and of the fundamental solution") {
  Rng rng(77);
  for (const auto& sp : {kSpace111, kSpace2305, kSpace312}) {
    const double Q = sp.Q(), mu = sp.mu();
    const FieldPtr r = make_gauge_power(sp, 1.0);
    const FieldPtr fund = make_gauge_power(sp, 2.0 - Q);
    double worst = 0.0, worst_harmonic = 0.0;
    int harmonic_points = 0;
    for (int i = 0; i < 100; ++i) {
      const Point p = random_point(sp, rng, 1e-3);
      const double rh = rho(sp, p), s = norm(p.x);
      const double want = (Q - 1.0) * std::pow(s, 2.0 * mu) / std::pow(rh, 2.0 * mu + 1.0);
      worst = std::max(worst, rel_err(fd_grushin_laplacian(sp, *r, p, 1e-3 * std::min(1.0, s)), want));
      if (rh >= 0.5 && rh <= 2.0 && s >= 0.2) {
        ++harmonic_points;
        const double lap = fd_grushin_laplacian(sp, *fund, p, 1e-3);
        worst_harmonic = std::max(worst_harmonic, std::fabs(lap) * std::pow(rh, Q));
      }
    }
    CAPTURE(Q);
    CHECK(worst < 1e-4);
    CHECK(harmonic_points > 10);
    CHECK(worst_harmonic < 1e-3);
  }
}

}  // TEST_SUITE
