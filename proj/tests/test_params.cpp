#include "helpers.hpp"

#include "grushin/error.hpp"
#include "grushin/params.hpp"

#include <doctest.h>

#include <cmath>

using namespace grushin;
using namespace grushin::testing;

namespace {

// Q = 3; p = q = 2, r = 3, a = 1/2, alpha = beta = sigma = 0
CknParams admissible_tuple() {
  CknParams c;
  c.p = 2;
  c.q = 2;
  c.r = 3;
  c.a = 0.5;
  return c;
}

bool fails(const AdmissibilityReport& r, const std::string& name) {
  const auto f = r.failing();
  return std::find(f.begin(), f.end(), name) != f.end();
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  FAIL("expected an error");
  return ErrorKind::config;
}

}  // namespace

TEST_SUITE("params") {

TEST_CASE("gamma is recomputed from a, sigma, beta") {
  CknParams c = admissible_tuple();
  c.sigma = 0.3;
  c.beta = -0.2;
  CHECK(c.gamma() == doctest::Approx(0.5 * 0.3 - 0.5 * 0.2));
  c.a = 1.0;
  CHECK(c.gamma() == 0.3);
}

TEST_CASE("admissible tuple") {
  const AdmissibilityReport r = check_ckn(kSpace111, admissible_tuple());
  CHECK(r.verdict);
  CHECK(r.failing().empty());
  CHECK(std::fabs(r.balance_residual) <= 1e-15);
  CHECK(std::fabs(balance_residual(kSpace111, admissible_tuple())) <= 1e-15);
  REQUIRE(r.find("1<p<Q") != nullptr);
  CHECK(r.find("1<p<Q")->pass);
}

TEST_CASE("negative r is rejected by name") {
  CknParams c = admissible_tuple();
  c.r = -1;
  const AdmissibilityReport r = check_ckn(kSpace111, c);
  CHECK_FALSE(r.verdict);
  CHECK(fails(r, "r>0"));
}

TEST_CASE("sigma above alpha violates the index condition") {
  CknParams c = admissible_tuple();
  c.sigma = c.alpha + 1.0;
  const AdmissibilityReport r = check_ckn(kSpace111, c);
  CHECK_FALSE(r.verdict);
  CHECK(fails(r, "0<=alpha-sigma"));
}

TEST_CASE("p outside (1, Q)") {
  CknParams c = admissible_tuple();
  c.p = 3;
  CHECK(fails(check_ckn(kSpace111, c), "1<p<Q"));
  c.p = 1;
  CHECK(fails(check_ckn(kSpace111, c), "1<p<Q"));
}

TEST_CASE("q-conditions are ignored at a = 1") {
  CknParams c;
  c.p = 2;
  c.a = 1;
  c.r = 6;
  c.q = 0.5;  // q>=1 fails but carries no weight
  const AdmissibilityReport r = check_ckn(kSpace111, c);
  REQUIRE(r.find("q>=1") != nullptr);
  CHECK(r.find("q>=1")->ignored);
  CHECK(r.verdict);
}

TEST_CASE("exact rational mode agrees and has zero balance residual") {
  CknParamsExact e;
  e.p = 2;
  e.q = 2;
  e.r = 3;
  e.a = Rational(1, 2);
  e.alpha = 0;
  e.beta = 0;
  e.sigma = 0;
  const AdmissibilityReport r = check_ckn_exact(1, 1, Rational(1), e);
  CHECK(r.exact);
  CHECK(r.verdict);
  CHECK(r.balance_residual == 0.0);
  e.r = Rational(301, 100);
  CHECK_FALSE(check_ckn_exact(1, 1, Rational(1), e).verdict);
}

TEST_CASE("equality trigger") {
  CknParams c;
  c.p = 2;
  c.q = 2;
  c.r = 2;
  c.a = 0.5;
  c.alpha = 2;
  c.beta = 1;
  c.sigma = 1;
  const AdmissibilityReport r = check_ckn(kSpace111, c);
  CHECK(r.verdict);
  CHECK(r.trigger_active);
  CHECK(std::fabs(r.trigger_residual) <= 1e-15);
  CHECK_FALSE(check_ckn(kSpace111, admissible_tuple()).trigger_active);
}

TEST_CASE("solve_balance") {
  CHECK(solve_balance(kSpace111, admissible_tuple(), BalanceUnknown::r).value == doctest::Approx(3.0).epsilon(1e-14));

  CknParams c;
  c.p = 2;
  c.q = 2;
  c.a = 1;
  c.alpha = 0.25;
  c.sigma = 0.25;
  c.beta = 0.25;
  const double Q = kSpace111.Q();
  CHECK(solve_balance(kSpace111, c, BalanceUnknown::r).value == doctest::Approx(c.p * Q / (Q - c.p)).epsilon(1e-14));

  // every unknown round-trips through check_ckn
  Rng rng(3);
  for (int i = 0; i < 200; ++i) {
    CknParams t;
    t.p = rng.uniform(1.2, 2.8);
    t.q = rng.uniform(1.0, 4.0);
    t.r = rng.uniform(0.5, 6.0);
    t.a = rng.uniform(0.1, 0.9);
    t.alpha = rng.uniform(-0.5, 1.0);
    t.beta = rng.uniform(-0.5, 1.0);
    t.sigma = t.alpha - rng.uniform(0.0, 1.0);
    for (BalanceUnknown u : {BalanceUnknown::r, BalanceUnknown::alpha, BalanceUnknown::beta, BalanceUnknown::sigma,
                             BalanceUnknown::a}) {
      BalanceSolution s;
      try {
        s = solve_balance(kSpace111, t, u);
      } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::degenerate);
        continue;
      }
      if (s.flagged) continue;
      const CknParams done = with_unknown(t, u, s.value);
      CHECK(std::fabs(check_ckn(kSpace111, done).balance_residual) <= 1e-12);
    }
  }
}

TEST_CASE("solve_balance flags nonpositive r and degenerate unknowns") {
  CknParams c = admissible_tuple();
  c.sigma = 5.0;  // 1/r = 1/3 - 5/6 < 0
  const BalanceSolution s = solve_balance(kSpace111, c, BalanceUnknown::r);
  CHECK(s.flagged);
  CHECK(s.value <= 0.0);

  CknParams z = admissible_tuple();
  z.a = 0.0;
  CHECK(kind_of([&] { solve_balance(kSpace111, z, BalanceUnknown::alpha); }) == ErrorKind::degenerate);
}

TEST_CASE("Hardy constant") {
  CHECK(hardy_constant(kSpace111, {2.0, 0.0}) == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(hardy_constant(kSpace111, {2.0, 0.5}) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(kind_of([] { hardy_constant(kSpace111, {2.0, -0.5}); }) == ErrorKind::inapplicable);
  CHECK(kind_of([] { hardy_constant(kSpace111, {2.0, -0.8}); }) == ErrorKind::inapplicable);
}

TEST_CASE("critical exponent p_*") {
  CHECK(p_star(kSpace111, 2.0, 0.0) == doctest::Approx(6.0).epsilon(1e-15));
  CHECK(p_star(kSpace111, 2.0, 1.0) == doctest::Approx(4.0).epsilon(1e-15));
  for (const auto& sp : {kSpace111, kSpace2305, kSpace312})
    for (double p : {1.2, 1.5, 1.9}) CHECK(p_star(sp, p, p) == doctest::Approx(p).epsilon(1e-15));
}

TEST_CASE("integrability criteria") {
  auto v = integrable(kSpace111, 0.0, -2.0, Region::near_origin);
  CHECK(v.integrable);
  CHECK_FALSE(v.boundary);
  CHECK(v.x_margin == 1.0);
  CHECK(v.rho_margin == 1.0);

  v = integrable(kSpace111, 0.0, -4.0, Region::near_infinity);
  CHECK(v.integrable);

  v = integrable(kSpace111, 0.0, -3.0, Region::near_origin);
  CHECK_FALSE(v.integrable);
  CHECK(v.boundary);

  v = integrable(kSpace111, -1.0, 0.0, Region::near_origin);  // |x|^-1 across x = 0 with d = 1
  CHECK_FALSE(v.integrable);
  CHECK(v.boundary);

  CHECK_FALSE(integrable(kSpace111, 0.0, -2.0, Region::near_infinity).integrable);
  CHECK(integrable(kSpace111, 2.0, -6.0, Region::near_infinity).integrable);
  CHECK_FALSE(integrable(kSpace111, 2.0, -6.0, Region::near_origin).integrable);
}

TEST_CASE("reduction of weighted Hardy-Sobolev to CKN") {
  const double Q = kSpace111.Q();
  CknParams c = remark_reduction(kSpace111, {2.0, 0.0, 0.3});
  CHECK(c.a == 1.0);
  CHECK(c.r == doctest::Approx(p_star(kSpace111, 2.0, 0.0)).epsilon(1e-15));
  CHECK(c.sigma == doctest::Approx(0.3).epsilon(1e-15));

  c = remark_reduction(kSpace111, {2.0, 2.0, 0.3});
  CHECK(c.r == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(c.alpha - c.sigma == doctest::Approx(1.0).epsilon(1e-15));

  c = remark_reduction(kSpace111, {2.0, 1.0, 0.0});
  CHECK(c.r == doctest::Approx(4.0).epsilon(1e-15));
  CHECK(c.sigma == doctest::Approx(-0.25).epsilon(1e-15));
  CHECK(c.r == doctest::Approx(2.0 * (Q - 1.0) / (Q - 2.0)).epsilon(1e-15));
  CHECK(check_ckn(kSpace111, c).verdict);

  CHECK(kind_of([] { remark_reduction(kSpace111, {2.0, 2.5, 0.0}); }) == ErrorKind::invalid_argument);
}

}  // TEST_SUITE
