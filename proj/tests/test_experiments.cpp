#include "helpers.hpp"

#include "grushin/engine.hpp"
#include "grushin/error.hpp"

#include <doctest.h>

#include <algorithm>
#include <cmath>

using namespace grushin;
using namespace grushin::testing;

namespace {

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::config;
}

CknParams tuple(double r, double alpha = 0, double beta = 0, double sigma = 0) {
  CknParams c;
  c.p = 2;
  c.q = 2;
  c.r = r;
  c.a = 0.5;
  c.alpha = alpha;
  c.beta = beta;
  c.sigma = sigma;
  return c;
}

const ExponentFit& fit(const ScalingReport& r, const std::string& name) {
  const auto it = std::find_if(r.fits.begin(), r.fits.end(), [&](const ExponentFit& f) { return f.name == name; });
  REQUIRE(it != r.fits.end());
  return *it;
}

EvalOptions quick() {
  EvalOptions o;
  o.tol = 1e-8;
  o.cross_check = false;
  return o;
}

const std::vector<double> kLambdas{1.0, 0.5, 0.25, 0.125};

}  // namespace

TEST_SUITE("experiments") {

TEST_CASE("balanced tuple: dilation-invariant ratio") {
  const ScalingReport r = scaling_experiment({kSpace111, tuple(3)}, make_bump(kSpace111, 0.5, 1.0), kLambdas, quick());
  CHECK(r.pass);
  CHECK(std::fabs(fit(r, "ratio").fitted) <= 1e-3);
  CHECK(fit(r, "lhs").fitted == doctest::Approx(-3.0).epsilon(1e-6));
  CHECK(fit(r, "gradient").fitted == doctest::Approx(-1.0).epsilon(1e-6));
  REQUIRE(r.ratios.size() == 4);
  for (double v : r.ratios) CHECK(v == doctest::Approx(r.ratios[0]).epsilon(1e-9));
}

TEST_CASE("unbalanced tuple: ratio blows up as lambda shrinks") {
  EvalOptions o = quick();
  o.force = true;
  const ScalingReport r = scaling_experiment({kSpace111, tuple(2)}, make_bump(kSpace111, 0.5, 1.0), kLambdas, o);
  const ExponentFit& f = fit(r, "ratio");
  CHECK(f.predicted == doctest::Approx(-0.5).epsilon(1e-12));
  CHECK(f.fitted == doctest::Approx(-0.5).epsilon(0.05));
  CHECK(r.ratios.back() > r.ratios.front());
}

TEST_CASE("weighted tuples follow the predicted exponents") {
  // alpha = 0.5, beta = 0.2, sigma = 0.1; r solved from the balance
  CknParams c = tuple(1.0, 0.5, 0.2, 0.1);
  c.r = solve_balance(kSpace2305, c, BalanceUnknown::r).value;
  const ScalingReport r = scaling_experiment({kSpace2305, c}, make_bump(kSpace2305, 0.5, 1.0), kLambdas, quick());
  CHECK(r.pass);
  CHECK(fit(r, "lhs").fitted == doctest::Approx(-c.gamma() * c.r - kSpace2305.Q()).epsilon(1e-6));
}

TEST_CASE("grids without spread are refused") {
  const InequalitySpec spec{kSpace111, tuple(3)};
  const FieldPtr u = make_bump(kSpace111, 0.5, 1.0);
  CHECK(kind_of([&] { scaling_experiment(spec, u, {1.0}, quick()); }) == ErrorKind::invalid_argument);
  CHECK(kind_of([&] { scaling_experiment(spec, u, {1.0, 1.0, 0.5}, quick()); }) == ErrorKind::invalid_argument);
  CHECK(kind_of([&] { scaling_experiment(spec, u, {1.0, 0.9, 0.8}, quick()); }) == ErrorKind::invalid_argument);
  CHECK(kind_of([&] { scaling_experiment(spec, u, {1.0, -0.5, 0.25}, quick()); }) == ErrorKind::invalid_argument);
}

TEST_CASE("translation: equal weights are neutral") {
  const ScalingReport r = translation_experiment({kSpace111, tuple(3)}, make_bump(kSpace111, 0.5, 1.0), {1.0}, {0.5},
                                                 {4, 8, 16, 32, 64}, quick());
  CHECK(r.pass);
  REQUIRE(r.contradiction.has_value());
  CHECK_FALSE(*r.contradiction);
  CHECK(std::fabs(*r.lhs_rate - *r.rhs_rate) <= 1e-6);
}

TEST_CASE("translation: sigma above alpha is a contradiction") {
  // a = 1/2, alpha = beta = 0, sigma = 1/2: the r-integral grows like lambda^{gamma r}
  CknParams c = tuple(3.0, 0.0, 0.0, 0.5);
  const ScalingReport r = translation_experiment({kSpace111, c}, make_bump(kSpace111, 0.5, 1.0), {1.0}, {0.5},
                                                 {4, 8, 16, 32, 64}, quick());
  CHECK(fit(r, "lhs").fitted == doctest::Approx(c.gamma() * c.r).epsilon(1e-3));
  REQUIRE(r.contradiction.has_value());
  CHECK(*r.contradiction);
  CHECK(*r.lhs_rate - *r.rhs_rate == doctest::Approx((c.sigma - c.alpha) * c.a).epsilon(1e-3));
}

TEST_CASE("translation preconditions") {
  const InequalitySpec spec{kSpace111, tuple(3)};
  const FieldPtr u = make_bump(kSpace111, 0.5, 1.0);
  CHECK(kind_of([&] { translation_experiment(spec, u, {1.0}, {0.5}, {1, 2, 4, 8}, quick()); }) ==
        ErrorKind::invalid_argument);
  CHECK(kind_of([&] { translation_experiment(spec, u, {0.0}, {0.5}, {4, 8, 16, 32}, quick()); }) ==
        ErrorKind::invalid_argument);
  CHECK(kind_of([&] { translation_experiment(spec, u, {1.0, 2.0}, {0.5}, {4, 8, 16, 32}, quick()); }) ==
        ErrorKind::dimension_mismatch);
}

TEST_CASE("log family on the equality trigger") {
  const CknParams c = tuple(2.0, 2.0, 1.0, 1.0);
  EvalOptions o = quick();
  const ScalingReport r = log_family_experiment({kSpace111, c}, {1e-2, 1e-3, 1e-4, 1e-5}, o);
  CHECK(std::fabs(fit(r, "lhs").fitted - (c.r + 1)) <= 0.2);
  CHECK(std::fabs(fit(r, "gradient").fitted - (c.p + 1)) <= 0.2);
  CHECK(std::fabs(fit(r, "q_term").fitted - (c.q + 1)) <= 0.2);
  REQUIRE(r.slow_convergence.has_value());
  CHECK_FALSE(*r.slow_convergence);
  REQUIRE(r.forced_inequality.has_value());
  CHECK(*r.forced_inequality);
  CHECK(r.pass);
}

TEST_CASE("log family near eps = 1 is flagged as slow") {
  const ScalingReport r = log_family_experiment({kSpace111, tuple(2.0, 2.0, 1.0, 1.0)}, {0.9, 0.8, 0.7, 0.6}, quick());
  REQUIRE(r.slow_convergence.has_value());
  CHECK(*r.slow_convergence);
}

TEST_CASE("log family needs the trigger") {
  CHECK(kind_of([&] { log_family_experiment({kSpace111, tuple(3.0)}, {1e-2, 1e-3, 1e-4}, quick()); }) ==
        ErrorKind::inapplicable);
}

TEST_CASE("sharp search: grid") {
  SearchConfig cfg;
  EvalOptions o = quick();
  const SearchReport r = sharp_search({kSpace111, HardyParams{2.0, 0.0}}, cfg, o);
  REQUIRE(r.trace.size() == 4);
  for (size_t i = 1; i < r.trace.size(); ++i) {
    CHECK(r.trace[i].ratio > r.trace[i - 1].ratio);
    CHECK(r.trace[i].best_so_far >= r.trace[i - 1].best_so_far);
  }
  REQUIRE(r.target.has_value());
  CHECK(*r.target == 4.0);
  CHECK(r.best_ratio >= 3.6);
  CHECK(r.best_ratio <= 4.0 * (1 + 3 * o.tol));
  CHECK(r.within_bound);
  CHECK(r.best_eps_shift == 0.05);
}

TEST_CASE("sharp search: far from the extremal") {
  SearchConfig cfg;
  cfg.eps_shift_grid = {0.8, 0.5};  // exponent >= 0
  const SearchReport r = sharp_search({kSpace111, HardyParams{2.0, 0.0}}, cfg, quick());
  CHECK(r.best_eps_shift == 0.5);
  CHECK(r.best_ratio < 3.6);
  CHECK(r.trace[0].ratio < r.trace[1].ratio);
}

TEST_CASE("sharp search: golden and simplex stay below the constant") {
  EvalOptions o = quick();
  o.tol = 1e-6;
  SearchConfig g;
  g.mode = SearchMode::golden;
  g.lo = 0.05;
  g.hi = 0.4;
  g.x_tol = 0.05;
  const SearchReport a = sharp_search({kSpace111, HardyParams{2.0, 0.0}}, g, o);
  CHECK(a.stabilized);
  CHECK(a.within_bound);
  CHECK(a.best_eps_shift < 0.1);

  SearchConfig nm = g;
  nm.mode = SearchMode::nelder_mead;
  nm.max_iterations = 12;
  nm.seed = 4;
  const SearchReport b = sharp_search({kSpace111, HardyParams{2.0, 0.0}}, nm, o);
  CHECK(b.within_bound);
  CHECK(b.trace.size() <= 12);
  const SearchReport b2 = sharp_search({kSpace111, HardyParams{2.0, 0.0}}, nm, o);
  CHECK(b.best_ratio == b2.best_ratio);
}

TEST_CASE("sharp search needs an applicable constant") {
  CHECK(kind_of([&] { sharp_search({kSpace111, HardyParams{2.0, -0.5}}, SearchConfig{}, quick()); }) ==
        ErrorKind::inapplicable);
}

}  // TEST_SUITE
