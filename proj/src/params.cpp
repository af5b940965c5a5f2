#include "grushin/params.hpp"

#include "grushin/error.hpp"

#include <cmath>
#include <sstream>

namespace grushin {

const char* to_string(Region r) noexcept { return r == Region::near_origin ? "near_origin" : "near_infinity"; }

const char* to_string(BalanceUnknown u) noexcept {
  switch (u) {
    case BalanceUnknown::r: return "r";
    case BalanceUnknown::alpha: return "alpha";
    case BalanceUnknown::beta: return "beta";
    case BalanceUnknown::sigma: return "sigma";
    case BalanceUnknown::a: return "a";
  }
  return "?";
}

CknParams CknParamsExact::to_double() const {
  auto f = [](const Rational& v) { return static_cast<double>(v); };
  return CknParams{f(p), f(q), f(r), f(a), f(alpha), f(beta), f(sigma)};
}

const PredicateCheck* AdmissibilityReport::find(const std::string& name) const {
  for (const auto& c : checks)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<std::string> AdmissibilityReport::failing() const {
  std::vector<std::string> out;
  for (const auto& c : checks)
    if (!c.pass && !c.ignored) out.push_back(c.name);
  return out;
}

namespace {

double to_d(double v) { return v; }
double to_d(const Rational& v) { return static_cast<double>(v); }

template <class T>
T abs_of(const T& v) {
  return v < 0 ? T(-v) : v;
}

template <class T>
T min_of(const T& a, const T& b) {
  return a < b ? a : b;
}

// One evaluation of the full predicate list; T is double (with tol) or Rational (tol = 0).
template <class T>
AdmissibilityReport run_checks(int d_int, const T& Q, const T& mu, const T& p, const T& q, const T& r, const T& a,
                               const T& alpha, const T& beta, const T& sigma, const T& tol) {
  const T d = d_int;
  const T gamma = a * sigma + (T(1) - a) * beta;
  AdmissibilityReport rep;
  const bool q_ignored = (a == T(1));
  auto add = [&](std::string name, const T& residual, bool pass, bool q_pred, std::string note = {}) {
    PredicateCheck c{std::move(name), to_d(residual), pass, q_pred && q_ignored, std::move(note)};
    if (c.ignored) c.note = "q-factor has exponent 1-a = 0; evaluated but not part of the verdict";
    rep.checks.push_back(std::move(c));
  };

  add("1<p<Q", min_of(T(p - 1), T(Q - p)), p > 1 && p < Q, false);
  add("q>=1", q - 1, q >= 1, true);
  add("r>0", r, r > 0, false);
  add("0<=a<=1", min_of(a, T(1 - a)), a >= 0 && a <= 1, false);
  const T xr = d + mu * (alpha - gamma) * r;
  add("d+mu(alpha-gamma)r>0", xr, xr > 0, false);
  const T xq = d + mu * (alpha - beta) * q;
  add("d+mu(alpha-beta)q>0", xq, xq > 0, true);
  const T ap = alpha * p + Q;
  add("alpha*p+Q>0", ap, ap > 0, false);
  const T bq = beta * q + Q;
  add("beta*q+Q>0", bq, bq > 0, true);
  const T gr = gamma * r + Q;
  add("gamma*r+Q>0", gr, gr > 0, false);

  // reciprocals only when defined; a zero exponent already failed above
  const T inv_r = r != 0 ? T(T(1) / r) : T(0);
  const T inv_p = p != 0 ? T(T(1) / p) : T(0);
  const T inv_q = q != 0 ? T(T(1) / q) : T(0);
  const T lhs = inv_r + gamma / Q;
  const T grad_side = inv_p + (alpha - 1) / Q;
  const T bal = lhs - a * grad_side - (T(1) - a) * (inv_q + beta / Q);
  const bool bal_ok = abs_of(bal) <= tol && r != 0 && p != 0 && q != 0;
  add("balance", bal, bal_ok, false, "1/r+gamma/Q = a(1/p+(alpha-1)/Q) + (1-a)(1/q+beta/Q)");
  rep.balance_residual = to_d(bal);

  const T index = alpha - sigma;
  if (a > 0) {
    add("0<=alpha-sigma", index, index >= 0, false);
  } else {
    add("0<=alpha-sigma", index, true, false, "inactive: a = 0");
  }
  const T trig = grad_side - lhs;
  rep.trigger_residual = to_d(trig);
  rep.trigger_active = a > 0 && abs_of(trig) <= tol;
  if (rep.trigger_active) {
    add("alpha-sigma<=1", T(1) - index, index <= T(1) + tol, false, "active: 1/p+(alpha-1)/Q = 1/r+gamma/Q");
  } else {
    add("alpha-sigma<=1", T(1) - index, true, false, a > 0 ? "inactive: equality trigger off" : "inactive: a = 0");
  }

  rep.verdict = true;
  for (const auto& c : rep.checks)
    if (!c.ignored) rep.verdict = rep.verdict && c.pass;
  rep.tol = to_d(tol);
  return rep;
}

}  // namespace

AdmissibilityReport check_ckn(const GrushinSpace& space, const CknParams& c, double tol) {
  require(tol >= 0.0, ErrorKind::invalid_argument, "check_ckn: tol must be nonnegative");
  return run_checks<double>(space.d(), space.Q(), space.mu(), c.p, c.q, c.r, c.a, c.alpha, c.beta, c.sigma, tol);
}

AdmissibilityReport check_ckn_exact(int d, int k, const Rational& mu, const CknParamsExact& c) {
  require(d >= 1 && k >= 1 && mu > 0, ErrorKind::invalid_argument, "check_ckn_exact: invalid space");
  const Rational Q = Rational(d) + (1 + mu) * k;
  auto rep = run_checks<Rational>(d, Q, mu, c.p, c.q, c.r, c.a, c.alpha, c.beta, c.sigma, Rational(0));
  rep.exact = true;
  return rep;
}

double balance_residual(const GrushinSpace& space, const CknParams& c) {
  const double Q = space.Q();
  return 1.0 / c.r + c.gamma() / Q - c.a * (1.0 / c.p + (c.alpha - 1.0) / Q) - (1.0 - c.a) * (1.0 / c.q + c.beta / Q);
}

CknParams with_unknown(CknParams params, BalanceUnknown free, double value) {
  switch (free) {
    case BalanceUnknown::r: params.r = value; break;
    case BalanceUnknown::alpha: params.alpha = value; break;
    case BalanceUnknown::beta: params.beta = value; break;
    case BalanceUnknown::sigma: params.sigma = value; break;
    case BalanceUnknown::a: params.a = value; break;
  }
  return params;
}

BalanceSolution solve_balance(const GrushinSpace& space, const CknParams& c, BalanceUnknown free) {
  // With gamma substituted the balance reads
  //   1/r + a*sigma/Q - a/p - a(alpha-1)/Q - (1-a)/q = 0,
  // and beta drops out.
  const double Q = space.Q();
  auto degenerate = [&](const char* why) {
    fail(ErrorKind::degenerate, std::string("solve_balance(") + to_string(free) + "): " + why);
  };
  BalanceSolution sol;
  switch (free) {
    case BalanceUnknown::r: {
      const double inv_r = c.a / c.p + c.a * (c.alpha - 1.0) / Q + (1.0 - c.a) / c.q - c.a * c.sigma / Q;
      if (inv_r == 0.0 || !std::isfinite(inv_r)) degenerate("1/r = 0 has no finite solution");
      sol.value = 1.0 / inv_r;
      if (sol.value <= 0.0) {
        sol.flagged = true;
        sol.note = "solution has r <= 0";
      }
      break;
    }
    case BalanceUnknown::alpha:
      if (c.a == 0.0) degenerate("alpha has zero coefficient when a = 0");
      sol.value = (1.0 / c.r + c.a * c.sigma / Q - c.a / c.p - (1.0 - c.a) / c.q) * Q / c.a + 1.0;
      break;
    case BalanceUnknown::sigma:
      if (c.a == 0.0) degenerate("sigma has zero coefficient when a = 0");
      sol.value = (-1.0 / c.r + c.a / c.p + c.a * (c.alpha - 1.0) / Q + (1.0 - c.a) / c.q) * Q / c.a;
      break;
    case BalanceUnknown::beta:
      degenerate("beta cancels out of the balance equation");
      break;
    case BalanceUnknown::a: {
      const double coef = (c.sigma - c.alpha + 1.0) / Q - 1.0 / c.p + 1.0 / c.q;
      if (std::fabs(coef) < 1e-15) degenerate("a has zero coefficient");
      sol.value = (1.0 / c.q - 1.0 / c.r) / coef;
      break;
    }
  }
  require(std::isfinite(sol.value), ErrorKind::degenerate, "solve_balance: non-finite solution");
  return sol;
}

double hardy_constant(const GrushinSpace& space, const HardyParams& hp) {
  require(hp.p > 1.0, ErrorKind::invalid_argument, "hardy_constant: p must exceed 1");
  const double denom = space.Q() - hp.p + hp.alpha * hp.p;
  if (!(denom > 0.0)) {
    std::ostringstream os;
    os << "hardy_constant: constant formula inapplicable (Q - p + alpha*p = " << denom << " <= 0)";
    fail(ErrorKind::inapplicable, os.str());
  }
  return std::pow(hp.p / denom, hp.p);
}

double p_star(const GrushinSpace& space, double p, double s) {
  const double Q = space.Q();
  require(p > 1.0 && p < Q, ErrorKind::invalid_argument, "p_star: p must lie in (1, Q)");
  require(s >= 0.0 && s <= p, ErrorKind::invalid_argument, "p_star: s must lie in [0, p]");
  return p * (Q - s) / (Q - p);
}

IntegrabilityVerdict integrable(const GrushinSpace& space, double x_exp, double rho_exp, Region region) {
  constexpr double zero_tol = 1e-12;
  IntegrabilityVerdict v;
  v.x_margin = x_exp + space.d();
  v.rho_margin = x_exp + rho_exp + space.Q();
  v.boundary = std::fabs(v.x_margin) <= zero_tol || std::fabs(v.rho_margin) <= zero_tol;
  const bool x_ok = v.x_margin > zero_tol;
  const bool rho_ok = region == Region::near_origin ? v.rho_margin > zero_tol : v.rho_margin < -zero_tol;
  v.integrable = x_ok && rho_ok;
  return v;
}

CknParams remark_reduction(const GrushinSpace& space, const WhsParams& whs) {
  const double Q = space.Q();
  require(whs.p > 1.0 && whs.p < Q, ErrorKind::invalid_argument, "remark_reduction: p must lie in (1, Q)");
  const double t = whs.s / whs.p;
  require(t >= 0.0 && t <= 1.0, ErrorKind::invalid_argument, "remark_reduction: t = s/p must lie in [0, 1]");
  CknParams c;
  c.p = whs.p;
  c.a = 1.0;
  c.r = whs.p * (Q - t * whs.p) / (Q - whs.p);
  c.alpha = whs.alpha;
  c.sigma = whs.alpha - t * whs.p / c.r;
  c.beta = c.sigma;
  c.q = whs.p;  // placeholder; the q-factor carries exponent 0
  return c;
}

}  // namespace grushin
