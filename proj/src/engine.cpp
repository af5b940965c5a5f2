#include "grushin/engine.hpp"

#include "grushin/error.hpp"
#include "grushin/format.hpp"

#include <algorithm>
#include <cmath>

namespace grushin {

const char* to_string(InequalityKind k) noexcept {
  switch (k) {
    case InequalityKind::hardy: return "hardy";
    case InequalityKind::whs: return "whs";
    case InequalityKind::ckn: return "ckn";
    case InequalityKind::sobolev: return "sobolev";
  }
  return "?";
}

InequalityKind InequalitySpec::kind() const noexcept { return static_cast<InequalityKind>(params.index()); }

namespace {

template <class T>
const T& get_params(const InequalitySpec& spec, const char* want) {
  const T* p = std::get_if<T>(&spec.params);
  require(p != nullptr, ErrorKind::invalid_argument,
          std::string("inequality spec is ") + to_string(spec.kind()) + ", expected " + want);
  return *p;
}

PredicateCheck predicate(std::string name, double residual, bool strict) {
  PredicateCheck c;
  c.name = std::move(name);
  c.residual = residual;
  c.pass = strict ? residual > 0.0 : residual >= 0.0;
  return c;
}

AdmissibilityReport conclude(std::vector<PredicateCheck> checks, double tol) {
  AdmissibilityReport rep;
  rep.checks = std::move(checks);
  rep.tol = tol;
  rep.verdict = std::all_of(rep.checks.begin(), rep.checks.end(), [](const PredicateCheck& c) { return c.pass; });
  return rep;
}

}  // namespace

const CknParams& InequalitySpec::ckn() const { return get_params<CknParams>(*this, "ckn"); }
const HardyParams& InequalitySpec::hardy() const { return get_params<HardyParams>(*this, "hardy"); }
const WhsParams& InequalitySpec::whs() const { return get_params<WhsParams>(*this, "whs"); }
const SobolevParams& InequalitySpec::sobolev() const { return get_params<SobolevParams>(*this, "sobolev"); }

AdmissibilityReport check_spec(const InequalitySpec& spec, double tol) {
  const double Q = spec.space.Q();
  switch (spec.kind()) {
    case InequalityKind::ckn: return check_ckn(spec.space, spec.ckn(), tol);
    case InequalityKind::hardy: {
      const auto& h = spec.hardy();
      return conclude({predicate("p>1", h.p - 1.0, true), predicate("1/p+alpha/Q>0", 1.0 / h.p + h.alpha / Q, true)},
                      tol);
    }
    case InequalityKind::whs: {
      const auto& w = spec.whs();
      return conclude({predicate("1<p<Q", std::min(w.p - 1.0, Q - w.p), true),
                       predicate("0<=s<=p", std::min(w.s, w.p - w.s), false),
                       predicate("alpha>(p-Q)/p", w.alpha - (w.p - Q) / w.p, true)},
                      tol);
    }
    case InequalityKind::sobolev: {
      const auto& s = spec.sobolev();
      return conclude({predicate("1<p<Q", std::min(s.p - 1.0, Q - s.p), true)}, tol);
    }
  }
  fail(ErrorKind::invalid_argument, "check_spec: unknown inequality kind");
}

std::vector<WeightedIntegrand> inequality_integrands(const InequalitySpec& spec, const FieldPtr& u) {
  require(u != nullptr, ErrorKind::invalid_argument, "inequality: null field");
  require(u->space() == spec.space, ErrorKind::dimension_mismatch, "inequality: field lives on another space");
  std::vector<WeightedIntegrand> out;
  switch (spec.kind()) {
    case InequalityKind::hardy: {
      const auto& h = spec.hardy();
      out.push_back(WeightedIntegrand::of_value(u, h.p, h.alpha * h.p - h.p, h.p));
      out.push_back(WeightedIntegrand::of_gradient(u, 0.0, h.alpha * h.p, h.p));
      break;
    }
    case InequalityKind::whs: {
      const auto& w = spec.whs();
      const double ps = p_star(spec.space, w.p, w.s);
      out.push_back(WeightedIntegrand::of_value(u, w.s, w.alpha * ps - w.s, ps));
      out.push_back(WeightedIntegrand::of_gradient(u, 0.0, w.alpha * w.p, w.p));
      break;
    }
    case InequalityKind::sobolev: {
      const auto& s = spec.sobolev();
      out.push_back(WeightedIntegrand::of_value(u, 0.0, 0.0, p_star(spec.space, s.p, 0.0)));
      out.push_back(WeightedIntegrand::of_gradient(u, 0.0, 0.0, s.p));
      break;
    }
    case InequalityKind::ckn: {
      const auto& c = spec.ckn();
      const double g = c.gamma();
      out.push_back(WeightedIntegrand::of_value(u, (c.alpha - g) * c.r, g * c.r, c.r));
      out.push_back(WeightedIntegrand::of_gradient(u, 0.0, c.alpha * c.p, c.p));
      if (c.a < 1.0) out.push_back(WeightedIntegrand::of_value(u, (c.alpha - c.beta) * c.q, c.beta * c.q, c.q));
      break;
    }
  }
  return out;
}

namespace {

const char* kTermNames[] = {"lhs", "gradient", "q_term"};

}  // namespace

std::string integrability_issue(const InequalitySpec& spec, const FieldPtr& u) {
  const GrushinSpace& sp = spec.space;
  const auto integrands = inequality_integrands(spec, u);
  if (!std::isfinite(u->support_radius())) return "field " + u->describe() + " has unbounded support";
  const OriginBehavior ob = u->origin_behavior();
  for (size_t i = 0; i < integrands.size(); ++i) {
    const WeightedIntegrand& g = integrands[i];
    const double x_exp = g.x_exponent(sp);
    // the |x|-weight is singular along all of {x = 0}, not only at the origin
    if (!(x_exp + sp.d() > 0.0))
      return std::string(kTermNames[i]) + ": |x|^" + num(x_exp) + " is not integrable across {x=0} (d=" +
             std::to_string(sp.d()) + ")";
    const bool gradient = g.part() == FieldPart::gradient_norm;
    if (gradient && ob.gradient_vanishes) continue;
    const double field_exp = gradient ? ob.gradient_exponent : ob.value_exponent;
    const double rho_exp = g.rho_exponent(sp) + g.power() * field_exp;
    const IntegrabilityVerdict v = integrable(sp, x_exp, rho_exp, Region::near_origin);
    if (!v.integrable)
      return std::string(kTermNames[i]) + ": near the origin the integrand behaves like |x|^" + num(x_exp) + " rho^" +
             num(rho_exp) + ", which is not integrable" + (v.boundary ? " (borderline, log-divergent)" : "");
  }
  return {};
}

TermReport integrate_term(const GrushinSpace& space, const std::string& name, const WeightedIntegrand& g,
                          const EvalOptions& opts) {
  TermReport t;
  t.name = name;
  t.integrand = g.describe();
  if (!g.bi_radial()) {
    const double R = g.field()->support_radius();
    require(std::isfinite(R), ErrorKind::invalid_argument, name + ": Monte Carlo route needs a bounded support");
    const double ty = std::pow(R, 1.0 + space.mu()) / (1.0 + space.mu());
    Point lo{std::vector<double>(space.d(), -R), std::vector<double>(space.k(), -ty)};
    Point hi{std::vector<double>(space.d(), R), std::vector<double>(space.k(), ty)};
    const QuadratureResult mc = monte_carlo_full(space, g, lo, hi, opts.mc_samples, opts.seed);
    t.value = mc.value;
    t.error_estimate = mc.error_estimate;
    t.n_evals = mc.n_evals;
    t.route = mc.route;
    t.seed = mc.seed;
    return t;
  }
  const QuadratureResult primary = integrate_polar(space, g, opts.tol, opts.quad);
  if (primary.status == QuadStatus::divergent) fail(ErrorKind::divergent, name + ": integral diverges (" + t.integrand + ")");
  if (!primary.converged)
    fail(ErrorKind::not_converged, name + ": quadrature did not converge within " + std::to_string(primary.n_evals) +
                                       " evaluations (" + t.integrand + ")");
  t.value = primary.value;
  t.error_estimate = primary.error_estimate;
  t.n_evals = primary.n_evals;
  t.route = primary.route;
  if (opts.cross_check) {
    const QuadratureResult cross = integrate_cartesian(space, g, opts.tol, opts.quad);
    t.n_evals += cross.n_evals;
    t.cross_route = cross.route;
    if (cross.status == QuadStatus::converged) {
      t.cross_value = cross.value;
      t.cross_error = cross.error_estimate;
      t.routes_agree = std::fabs(primary.value - cross.value) <= primary.error_estimate + cross.error_estimate;
    } else {
      t.routes_agree = false;
    }
  }
  return t;
}

InequalityReport evaluate(const InequalitySpec& spec, const FieldPtr& u, const EvalOptions& opts) {
  require(opts.tol > 0.0 && opts.tol < 1.0, ErrorKind::invalid_argument, "evaluate: tol must lie in (0, 1)");
  InequalityReport rep;
  rep.kind = spec.kind();
  rep.tol = opts.tol;
  rep.forced = opts.force;

  const AdmissibilityReport adm = check_spec(spec);
  rep.admissible = adm.verdict;
  if (!adm.verdict && !opts.force) {
    std::string names;
    for (const auto& n : adm.failing()) names += (names.empty() ? "" : ", ") + n;
    fail(ErrorKind::inadmissible, std::string(to_string(spec.kind())) + " tuple is not admissible (failing: " + names +
                                      "); pass force to evaluate anyway");
  }
  const auto integrands = inequality_integrands(spec, u);
  rep.field = u->describe();
  if (const std::string issue = integrability_issue(spec, u); !issue.empty()) fail(ErrorKind::integrability, issue);

  for (size_t i = 0; i < integrands.size(); ++i) rep.terms.push_back(integrate_term(spec.space, kTermNames[i], integrands[i], opts));
  const double i_lhs = rep.terms[0].value;
  const double i_grad = rep.terms[1].value;
  const double Q = spec.space.Q();

  switch (spec.kind()) {
    case InequalityKind::hardy: {
      rep.lhs = i_lhs;
      rep.rhs_grad_factor = i_grad;
      try {
        rep.constant = hardy_constant(spec.space, spec.hardy());
      } catch (const Error& e) {
        if (e.kind() != ErrorKind::inapplicable) throw;
        rep.constant_note = e.what();
      }
      break;
    }
    case InequalityKind::whs: {
      const auto& w = spec.whs();
      rep.lhs = i_lhs;
      rep.rhs_grad_factor = std::pow(i_grad, (Q - w.s) / (Q - w.p));
      rep.constant_note = "no closed-form constant";
      break;
    }
    case InequalityKind::sobolev: {
      const double p = spec.sobolev().p;
      // both sides raised to p*: lhs is the plain p*-integral
      rep.lhs = i_lhs;
      rep.rhs_grad_factor = std::pow(i_grad, Q / (Q - p));
      rep.constant_note = "no closed-form constant";
      break;
    }
    case InequalityKind::ckn: {
      const auto& c = spec.ckn();
      rep.a = c.a;
      rep.lhs = std::pow(i_lhs, 1.0 / c.r);
      rep.rhs_grad_factor = std::pow(i_grad, 1.0 / c.p);
      if (c.a < 1.0) rep.rhs_q_factor = std::pow(rep.terms[2].value, 1.0 / c.q);
      rep.constant_note = "no closed-form constant";
      break;
    }
  }
  rep.rhs = rep.a == 1.0 ? rep.rhs_grad_factor
                         : std::pow(rep.rhs_grad_factor, rep.a) * std::pow(rep.rhs_q_factor, 1.0 - rep.a);
  require(rep.rhs > 0.0 && std::isfinite(rep.rhs), ErrorKind::degenerate,
          "evaluate: right-hand side is " + num(rep.rhs) + " (trivial field?)");
  rep.ratio = rep.lhs / rep.rhs;
  if (rep.constant) {
    const double bound = *rep.constant * rep.rhs;
    rep.satisfied_at_constant = rep.lhs <= bound * (1.0 + 3.0 * opts.tol);
    rep.violation_asserted = rep.lhs > bound * (1.0 + 10.0 * opts.tol);
  }
  return rep;
}

}  // namespace grushin
