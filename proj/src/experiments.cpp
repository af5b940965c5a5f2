#include "grushin/engine.hpp"

#include "grushin/error.hpp"
#include "grushin/fields.hpp"
#include "grushin/fitting.hpp"
#include "grushin/format.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace grushin {

namespace {

void require_grid(const std::vector<double>& grid, const char* what, double min_span) {
  for (double v : grid)
    require(std::isfinite(v) && v > 0.0, ErrorKind::invalid_argument, std::string(what) + " values must be positive");
  const std::set<double> distinct(grid.begin(), grid.end());
  require(distinct.size() >= 3, ErrorKind::invalid_argument,
          std::string(what) + " grid needs at least 3 distinct values for a fit");
  const double span = *distinct.rbegin() / *distinct.begin();
  require(span >= min_span * (1.0 - 1e-12), ErrorKind::invalid_argument,
          std::string(what) + " grid spans a factor of " + num(span) + "; at least " + num(min_span) + " is required");
}

ExponentFit fit_exponent(std::string name, const std::vector<double>& x, const std::vector<double>& values,
                         double predicted, double tolerance) {
  std::vector<double> y;
  for (double v : values) {
    require(v > 0.0 && std::isfinite(v), ErrorKind::degenerate, name + ": cannot fit a log of " + num(v));
    y.push_back(std::log(v));
  }
  const LinearFit lf = fit_line(x, y);
  ExponentFit f;
  f.name = std::move(name);
  f.fitted = lf.slope;
  f.predicted = predicted;
  f.r_squared = lf.r_squared;
  f.tolerance = tolerance;
  f.inconclusive = lf.r_squared < kMinFitRSquared;
  f.pass = !f.inconclusive && std::fabs(f.fitted - f.predicted) <= tolerance;
  return f;
}

// OLS slopes are linear in the data, so the slope of log(ratio) is this
// combination of the per-integral slopes. Its R^2 is not used: for a balanced
// tuple the ratio is flat and only quadrature noise remains.
ExponentFit combine(std::string name, const std::vector<std::pair<double, const ExponentFit*>>& parts, double predicted,
                    double tolerance) {
  ExponentFit f;
  f.name = std::move(name);
  f.predicted = predicted;
  f.tolerance = tolerance;
  f.r_squared = 1.0;
  for (const auto& [w, p] : parts) {
    f.fitted += w * p->fitted;
    f.r_squared = std::min(f.r_squared, p->r_squared);
    f.inconclusive = f.inconclusive || p->inconclusive;
  }
  f.pass = !f.inconclusive && std::fabs(f.fitted - f.predicted) <= tolerance;
  return f;
}

std::vector<double> logs(const std::vector<double>& v) {
  std::vector<double> out;
  for (double x : v) out.push_back(std::log(x));
  return out;
}

double ckn_ratio(const CknParams& c, double i_r, double i_g, double i_q) {
  double rhs = std::pow(i_g, c.a / c.p);
  if (c.a < 1.0) rhs *= std::pow(i_q, (1.0 - c.a) / c.q);
  return std::pow(i_r, 1.0 / c.r) / rhs;
}

}  // namespace

ScalingReport scaling_experiment(const InequalitySpec& spec, const FieldPtr& u, const std::vector<double>& lambdas,
                                 const EvalOptions& opts) {
  const CknParams& c = spec.ckn();
  require_grid(lambdas, "lambda", 8.0);
  if (const std::string issue = integrability_issue(spec, u); !issue.empty()) fail(ErrorKind::integrability, issue);
  const double Q = spec.space.Q();
  const double g = c.gamma();
  const bool with_q = c.a < 1.0;

  ScalingReport rep;
  rep.experiment = "scaling";
  rep.abscissa = "lambda";
  rep.grid = lambdas;
  rep.tol = opts.tol;
  rep.term_names = {"lhs", "gradient"};
  if (with_q) rep.term_names.push_back("q_term");
  rep.integrals.assign(rep.term_names.size(), {});

  for (double lambda : lambdas) {
    const FieldPtr ul = dilate_field(u, lambda);
    const auto integrands = inequality_integrands(spec, ul);
    for (size_t i = 0; i < integrands.size(); ++i) {
      const TermReport t = integrate_term(spec.space, rep.term_names[i], integrands[i], opts);
      rep.n_evals += t.n_evals;
      if (t.routes_agree == false) rep.notes.push_back(rep.term_names[i] + " at lambda=" + num(lambda) + ": routes disagree");
      rep.integrals[i].push_back(t.value);
    }
    rep.ratios.push_back(ckn_ratio(c, rep.integrals[0].back(), rep.integrals[1].back(), with_q ? rep.integrals[2].back() : 1.0));
  }

  const std::vector<double> x = logs(lambdas);
  const double tol = kScalingExponentTol;
  rep.fits.push_back(fit_exponent("lhs", x, rep.integrals[0], -g * c.r - Q, tol));
  rep.fits.push_back(fit_exponent("gradient", x, rep.integrals[1], -(c.alpha - 1.0) * c.p - Q, tol));
  if (with_q) rep.fits.push_back(fit_exponent("q_term", x, rep.integrals[2], -c.beta * c.q - Q, tol));

  const double lhs_pred = -g - Q / c.r;
  const double rhs_pred = c.a * (-(c.alpha - 1.0) - Q / c.p) + (1.0 - c.a) * (-c.beta - Q / c.q);
  std::vector<std::pair<double, const ExponentFit*>> parts{{1.0 / c.r, &rep.fits[0]}, {-c.a / c.p, &rep.fits[1]}};
  if (with_q) parts.push_back({-(1.0 - c.a) / c.q, &rep.fits[2]});
  rep.fits.push_back(combine("ratio", parts, lhs_pred - rhs_pred, tol));

  rep.inconclusive = std::any_of(rep.fits.begin(), rep.fits.end(), [](const ExponentFit& f) { return f.inconclusive; });
  rep.pass = std::all_of(rep.fits.begin(), rep.fits.end(), [](const ExponentFit& f) { return f.pass; });
  const ExponentFit& ratio = rep.fits.back();
  if (rep.inconclusive) {
    rep.verdict = "inconclusive: a log-log fit has R^2 below " + num(kMinFitRSquared);
  } else if (std::fabs(ratio.fitted) <= tol) {
    rep.verdict = "ratio is dilation invariant (exponent " + num(ratio.fitted) + "); consistent with dimensional balance";
  } else {
    rep.verdict = std::string("ratio scales like lambda^") + num(ratio.fitted) + " and is unbounded as lambda -> " +
                  (ratio.fitted < 0 ? "0" : "infinity") + "; dimensional balance fails";
  }
  return rep;
}

ScalingReport translation_experiment(const InequalitySpec& spec, const FieldPtr& u, const std::vector<double>& x0,
                                     const std::vector<double>& y0, const std::vector<double>& lambdas,
                                     const EvalOptions& opts) {
  const CknParams& c = spec.ckn();
  const GrushinSpace& sp = spec.space;
  check_dims(sp, Point{x0, y0});
  require(norm(x0) > 0.0, ErrorKind::invalid_argument, "translation: x0 must be nonzero");
  require_grid(lambdas, "lambda", 8.0);
  require(u != nullptr && u->bi_radial(), ErrorKind::invalid_argument, "translation: base field must be bi-radial");
  const double R = u->support_radius();
  require(std::isfinite(R), ErrorKind::invalid_argument, "translation: base field must be compactly supported");
  const double sx0 = norm(x0), ty0 = norm(y0);
  for (double lambda : lambdas)
    require(lambda * sx0 >= 2.0 * R, ErrorKind::invalid_argument,
            "translation: lambda=" + num(lambda) + " leaves the shifted support within reach of {x=0}; need lambda |x0| >= " +
                num(2.0 * R));
  if (const std::string issue = integrability_issue(spec, u); !issue.empty()) fail(ErrorKind::integrability, issue);

  const double mu = sp.mu();
  const double g = c.gamma();
  const bool with_q = c.a < 1.0;

  // translation-invariant base integrals
  EvalOptions base_opts = opts;
  const TermReport b_r = integrate_term(sp, "base_r", WeightedIntegrand::of_value(u, 0.0, 0.0, c.r), base_opts);
  const TermReport b_g = integrate_term(sp, "base_gradient", WeightedIntegrand::of_gradient(u, 0.0, 0.0, c.p), base_opts);
  TermReport b_q;
  if (with_q) b_q = integrate_term(sp, "base_q", WeightedIntegrand::of_value(u, 0.0, 0.0, c.q), base_opts);

  ScalingReport rep;
  rep.experiment = "translation";
  rep.abscissa = "lambda";
  rep.grid = lambdas;
  rep.tol = opts.tol;
  rep.n_evals = b_r.n_evals + b_g.n_evals + b_q.n_evals;
  rep.term_names = {"lhs", "gradient"};
  if (with_q) rep.term_names.push_back("q_term");
  for (const char* n : {"lhs_lower", "lhs_upper", "gradient_lower", "gradient_upper"}) rep.term_names.push_back(n);
  if (with_q) {
    rep.term_names.push_back("q_lower");
    rep.term_names.push_back("q_upper");
  }
  rep.term_names.push_back("gradient_diagnostic");
  rep.integrals.assign(rep.term_names.size(), {});
  auto row = [&](const std::string& name) -> std::vector<double>& {
    const auto it = std::find(rep.term_names.begin(), rep.term_names.end(), name);
    return rep.integrals[static_cast<size_t>(it - rep.term_names.begin())];
  };

  // (s/rho)^{mu A} rho^B over a box of (s, rho); monotone in each, so extremes sit at corners
  auto weight = [&](double A, double B, double s, double r) { return std::pow(s / r, mu * A) * std::pow(r, B); };
  auto bounds = [&](double A, double B, double s_lo, double s_hi, double r_lo, double r_hi) {
    double lo = kInfinity, hi = 0.0;
    for (double s : {s_lo, s_hi})
      for (double r : {r_lo, r_hi}) {
        const double w = weight(A, B, s, r);
        lo = std::min(lo, w);
        hi = std::max(hi, w);
      }
    return std::pair{lo, hi};
  };

  const double ty_R = std::pow(R, 1.0 + mu) / (1.0 + mu);
  for (double lambda : lambdas) {
    const double sc = lambda * sx0;
    const double tc = std::pow(lambda, 1.0 + mu) * ty0;
    const double rc = rho_radial(sp, sc, tc);
    const double s_lo = sc - R, s_hi = sc + R;
    const double r_lo = rho_radial(sp, s_lo, std::max(0.0, tc - ty_R));
    const double r_hi = rho_radial(sp, s_hi, tc + ty_R);

    const double Ar = (c.alpha - g) * c.r, Br = g * c.r;
    row("lhs").push_back(weight(Ar, Br, sc, rc) * b_r.value);
    const auto [lr, hr] = bounds(Ar, Br, s_lo, s_hi, r_lo, r_hi);
    row("lhs_lower").push_back(lr * b_r.value);
    row("lhs_upper").push_back(hr * b_r.value);

    const double Bg = c.alpha * c.p;
    row("gradient").push_back(weight(0.0, Bg, sc, rc) * b_g.value);
    const auto [lg, hg] = bounds(0.0, Bg, s_lo, s_hi, r_lo, r_hi);
    row("gradient_lower").push_back(lg * b_g.value);
    row("gradient_upper").push_back(hg * b_g.value);

    if (with_q) {
      const double Aq = (c.alpha - c.beta) * c.q, Bq = c.beta * c.q;
      row("q_term").push_back(weight(Aq, Bq, sc, rc) * b_q.value);
      const auto [lq, hq] = bounds(Aq, Bq, s_lo, s_hi, r_lo, r_hi);
      row("q_lower").push_back(lq * b_q.value);
      row("q_upper").push_back(hq * b_q.value);
    }

    // The y-part of grad_mu on the shifted support carries |x|^mu ~ (lambda |x0|)^mu,
    // not the base field's own |x|^mu; freeze it at the support centre.
    const TermReport diag = integrate_term(sp, "gradient_diagnostic",
                                           WeightedIntegrand::of_frozen_gradient(u, std::pow(sc, mu), c.p), opts);
    rep.n_evals += diag.n_evals;
    row("gradient_diagnostic").push_back(weight(0.0, Bg, sc, rc) * diag.value);
  }

  const std::vector<double> x = logs(lambdas);
  const double tol = kScalingExponentTol;
  const ExponentFit f_r = fit_exponent("lhs", x, row("lhs"), g * c.r, tol);
  const ExponentFit f_g = fit_exponent("gradient", x, row("gradient"), c.alpha * c.p, tol);
  rep.fits = {f_r, f_g};
  std::optional<ExponentFit> f_q;
  if (with_q) {
    f_q = fit_exponent("q_term", x, row("q_term"), c.beta * c.q, tol);
    rep.fits.push_back(*f_q);
  }
  // bounds and the diagnostic approach their asymptotes only as lambda grows; informational
  const double loose = 0.1;
  for (const char* n : {"lhs_lower", "lhs_upper"}) rep.fits.push_back(fit_exponent(n, x, row(n), g * c.r, loose));
  for (const char* n : {"gradient_lower", "gradient_upper"}) rep.fits.push_back(fit_exponent(n, x, row(n), c.alpha * c.p, loose));
  if (with_q)
    for (const char* n : {"q_lower", "q_upper"}) rep.fits.push_back(fit_exponent(n, x, row(n), c.beta * c.q, loose));
  const ExponentFit f_diag =
      fit_exponent("gradient_diagnostic", x, row("gradient_diagnostic"), (c.alpha + mu) * c.p, loose);
  rep.fits.push_back(f_diag);

  rep.lhs_rate = f_r.fitted / c.r;
  const double q_rate = with_q ? (1.0 - c.a) * f_q->fitted / c.q : 0.0;
  rep.rhs_rate = c.a * f_g.fitted / c.p + q_rate;
  rep.diagnostic_rhs_rate = c.a * f_diag.fitted / c.p + q_rate;
  const double margin = 10.0 * tol;
  rep.contradiction = *rep.lhs_rate > *rep.rhs_rate + margin;
  rep.diagnostic_contradiction = *rep.lhs_rate > *rep.diagnostic_rhs_rate + margin;

  rep.inconclusive = f_r.inconclusive || f_g.inconclusive || (f_q && f_q->inconclusive);
  rep.pass = f_r.pass && f_g.pass && (!f_q || f_q->pass);
  if (rep.inconclusive) {
    rep.verdict = "inconclusive: a log-log fit has R^2 below " + num(kMinFitRSquared);
  } else if (*rep.contradiction) {
    rep.verdict = "lhs grows like lambda^" + num(*rep.lhs_rate) + " per unit norm power, faster than the rhs (lambda^" +
                  num(*rep.rhs_rate) + "); the inequality cannot hold, so 0 <= alpha - sigma is necessary";
  } else if (std::fabs(*rep.lhs_rate - *rep.rhs_rate) <= margin) {
    rep.verdict = "lhs and rhs grow at the same rate; neutral";
  } else {
    rep.verdict = "rhs grows faster than lhs; no contradiction";
  }
  if (*rep.diagnostic_contradiction != *rep.contradiction)
    rep.notes.push_back("with the y-gradient weight frozen at (lambda |x0|)^mu the verdict flips");
  rep.notes.push_back("weights frozen at the support centre; lower/upper rows bound them over the shifted support");
  return rep;
}

ScalingReport log_family_experiment(const InequalitySpec& spec, const std::vector<double>& eps_list,
                                    const EvalOptions& opts) {
  const CknParams& c = spec.ckn();
  const GrushinSpace& sp = spec.space;
  for (double e : eps_list)
    require(std::isfinite(e) && e > 0.0 && e < 1.0, ErrorKind::invalid_argument, "log family: eps values must lie in (0, 1)");
  const std::set<double> distinct(eps_list.begin(), eps_list.end());
  require(distinct.size() >= 3, ErrorKind::invalid_argument, "log family: need at least 3 distinct eps values");
  const AdmissibilityReport adm = check_ckn(sp, c);
  require(std::fabs(adm.balance_residual) <= adm.tol && adm.trigger_active, ErrorKind::inapplicable,
          "log family: the tuple must satisfy balance and 1/p+(alpha-1)/Q = 1/r+gamma/Q (balance residual " +
              num(adm.balance_residual) + ", trigger residual " + num(adm.trigger_residual) +
              "); use the scaling experiment instead");
  const bool with_q = c.a < 1.0;

  ScalingReport rep;
  rep.experiment = "log_family";
  rep.abscissa = "log(1/eps)";
  rep.grid = eps_list;
  rep.tol = opts.tol;
  rep.term_names = {"lhs", "gradient"};
  if (with_q) rep.term_names.push_back("q_term");
  rep.integrals.assign(rep.term_names.size(), {});

  std::vector<double> x;
  for (double eps : eps_list) {
    const FieldPtr u = make_log_family(sp, eps, c.gamma(), c.r);
    const auto integrands = inequality_integrands(spec, u);
    for (size_t i = 0; i < integrands.size(); ++i) {
      const TermReport t = integrate_term(sp, rep.term_names[i], integrands[i], opts);
      rep.n_evals += t.n_evals;
      if (t.routes_agree == false) rep.notes.push_back(rep.term_names[i] + " at eps=" + num(eps) + ": routes disagree");
      rep.integrals[i].push_back(t.value);
    }
    rep.ratios.push_back(ckn_ratio(c, rep.integrals[0].back(), rep.integrals[1].back(), with_q ? rep.integrals[2].back() : 1.0));
    x.push_back(std::log(std::log(1.0 / eps)));
  }

  const double tol = kLogExponentTol;
  rep.fits.push_back(fit_exponent("lhs", x, rep.integrals[0], c.r + 1.0, tol));
  rep.fits.push_back(fit_exponent("gradient", x, rep.integrals[1], c.p + 1.0, tol));
  if (with_q) rep.fits.push_back(fit_exponent("q_term", x, rep.integrals[2], c.q + 1.0, tol));
  const double rhs_growth = c.a * (1.0 + 1.0 / c.p) + (1.0 - c.a) * (1.0 + 1.0 / c.q);
  std::vector<std::pair<double, const ExponentFit*>> parts{{1.0 / c.r, &rep.fits[0]}, {-c.a / c.p, &rep.fits[1]}};
  if (with_q) parts.push_back({-(1.0 - c.a) / c.q, &rep.fits[2]});
  rep.fits.push_back(combine("ratio", parts, 1.0 + 1.0 / c.r - rhs_growth, tol));
  rep.forced_inequality = 1.0 + 1.0 / c.r <= rhs_growth + adm.tol;

  // local slopes between neighbouring grid points should agree once the asymptotic regime is reached
  std::vector<size_t> order(eps_list.size());
  for (size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](size_t a, size_t b) { return x[a] < x[b]; });
  bool slow = std::log10(*distinct.rbegin() / *distinct.begin()) < 3.0 - 1e-9;
  if (slow) rep.notes.push_back("eps grid spans fewer than 3 decades");
  for (size_t t = 0; t < rep.integrals.size(); ++t) {
    std::vector<double> local;
    for (size_t j = 1; j < order.size(); ++j) {
      const size_t a = order[j - 1], b = order[j];
      if (x[a] == x[b]) continue;
      local.push_back((std::log(rep.integrals[t][b]) - std::log(rep.integrals[t][a])) / (x[b] - x[a]));
    }
    for (size_t j = 1; j < local.size(); ++j)
      if (std::fabs(local[j] - local[j - 1]) > 0.1 * std::fabs(local[j])) {
        slow = true;
        rep.notes.push_back(rep.term_names[t] + ": successive local exponents " + num(local[j - 1]) + " and " +
                            num(local[j]) + " differ by more than 10%");
        break;
      }
  }
  rep.slow_convergence = slow;

  rep.inconclusive = std::any_of(rep.fits.begin(), rep.fits.end(), [](const ExponentFit& f) { return f.inconclusive; });
  rep.pass = std::all_of(rep.fits.begin(), rep.fits.end() - 1, [](const ExponentFit& f) { return f.pass; });
  if (rep.inconclusive) {
    rep.verdict = "inconclusive: a log-log fit has R^2 below " + num(kMinFitRSquared);
  } else if (*rep.forced_inequality) {
    rep.verdict = "growth exponents allow the inequality: 1+1/r <= a(1+1/p)+(1-a)(1+1/q)";
  } else {
    rep.verdict = "ratio grows like log(1/eps)^" + num(rep.fits.back().fitted) +
                  "; the inequality fails on this tuple, so alpha - sigma <= 1 is necessary";
  }
  return rep;
}

}  // namespace grushin
