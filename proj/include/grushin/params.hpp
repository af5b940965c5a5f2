#pragma once

#include "grushin/space.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace grushin {

using Rational = boost::multiprecision::cpp_rational;

struct CknParams {
  double p = 0, q = 0, r = 0, a = 0;
  double alpha = 0, beta = 0, sigma = 0;

  double gamma() const noexcept { return a * sigma + (1.0 - a) * beta; }
};

struct WhsParams {
  double p = 0, s = 0, alpha = 0;
};

struct HardyParams {
  double p = 0, alpha = 0;
};

// Rational copy of a tuple for certificate-grade checks.
struct CknParamsExact {
  Rational p, q, r, a, alpha, beta, sigma;

  Rational gamma() const { return a * sigma + (1 - a) * beta; }
  CknParams to_double() const;
};

struct PredicateCheck {
  std::string name;
  double residual = 0;  // signed; the predicate holds when the residual has the required sign
  bool pass = false;
  bool ignored = false;  // evaluated but excluded from the verdict (q-conditions at a = 1)
  std::string note;
};

struct AdmissibilityReport {
  bool verdict = false;
  std::vector<PredicateCheck> checks;
  double balance_residual = 0;
  double trigger_residual = 0;  // 1/p + (alpha-1)/Q - (1/r + gamma/Q)
  bool trigger_active = false;
  double tol = 0;
  bool exact = false;

  const PredicateCheck* find(const std::string& name) const;
  std::vector<std::string> failing() const;
};

inline constexpr double kDefaultAdmissibilityTol = 1e-9;

AdmissibilityReport check_ckn(const GrushinSpace& space, const CknParams& params, double tol = kDefaultAdmissibilityTol);
// rational mode: mu must be rational too; balance and trigger are exact equalities
AdmissibilityReport check_ckn_exact(int d, int k, const Rational& mu, const CknParamsExact& params);

// signed residual 1/r + gamma/Q - a(1/p + (alpha-1)/Q) - (1-a)(1/q + beta/Q)
double balance_residual(const GrushinSpace& space, const CknParams& params);

enum class BalanceUnknown { r, alpha, beta, sigma, a };

struct BalanceSolution {
  double value = 0;
  bool flagged = false;  // r <= 0 came out
  std::string note;
};

BalanceSolution solve_balance(const GrushinSpace& space, const CknParams& params, BalanceUnknown free);
CknParams with_unknown(CknParams params, BalanceUnknown free, double value);

double hardy_constant(const GrushinSpace& space, const HardyParams& hp);
double p_star(const GrushinSpace& space, double p, double s);

enum class Region { near_origin, near_infinity };

struct IntegrabilityVerdict {
  bool integrable = false;
  bool boundary = false;  // one of the two expressions is exactly zero
  double x_margin = 0;    // xExp + d
  double rho_margin = 0;  // xExp + rhoExp + Q
};

IntegrabilityVerdict integrable(const GrushinSpace& space, double x_exp, double rho_exp, Region region);

CknParams remark_reduction(const GrushinSpace& space, const WhsParams& whs);

const char* to_string(Region r) noexcept;
const char* to_string(BalanceUnknown u) noexcept;

}  // namespace grushin
