#include "grushin/quadrature.hpp"

#include "adaptive.hpp"
#include "grushin/error.hpp"
#include "grushin/fitting.hpp"
#include "grushin/format.hpp"
#include "grushin/geometry.hpp"
#include "grushin/rng.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <tuple>

namespace grushin {

using detail::Budget;
using detail::Integrand1D;
using detail::LineResult;
using detail::Sample;

const char* to_string(FieldPart part) noexcept {
  switch (part) {
    case FieldPart::none: return "none";
    case FieldPart::value: return "value";
    case FieldPart::gradient_norm: return "gradient_norm";
    case FieldPart::frozen_gradient_norm: return "frozen_gradient_norm";
  }
  return "?";
}

const char* to_string(QuadStatus s) noexcept {
  switch (s) {
    case QuadStatus::converged: return "converged";
    case QuadStatus::not_converged: return "not_converged";
    case QuadStatus::divergent: return "divergent";
  }
  return "?";
}

double snap_exponent(double v) {
  if (!std::isfinite(v)) return v;
  return std::ldexp(std::nearbyint(std::ldexp(v, 42)), -42);
}

// ---------------------------------------------------------------- integrand

WeightedIntegrand WeightedIntegrand::pure_weight(double a_weight, double rho_weight) {
  WeightedIntegrand g;
  g.a_weight_ = snap_exponent(a_weight);
  g.rho_weight_ = snap_exponent(rho_weight);
  return g;
}

WeightedIntegrand WeightedIntegrand::of_value(FieldPtr field, double a_weight, double rho_weight, double power) {
  require(field != nullptr, ErrorKind::invalid_argument, "WeightedIntegrand: null field");
  require(power > 0.0, ErrorKind::invalid_argument, "WeightedIntegrand: power must be positive");
  WeightedIntegrand g = pure_weight(a_weight, rho_weight);
  g.field_ = std::move(field);
  g.part_ = FieldPart::value;
  g.power_ = snap_exponent(power);
  return g;
}

WeightedIntegrand WeightedIntegrand::of_gradient(FieldPtr field, double a_weight, double rho_weight, double power) {
  WeightedIntegrand g = of_value(std::move(field), a_weight, rho_weight, power);
  g.part_ = FieldPart::gradient_norm;
  return g;
}

WeightedIntegrand WeightedIntegrand::of_frozen_gradient(FieldPtr field, double y_factor, double power) {
  WeightedIntegrand g = of_value(std::move(field), 0.0, 0.0, power);
  require(y_factor >= 0.0 && std::isfinite(y_factor), ErrorKind::invalid_argument,
          "WeightedIntegrand: frozen gradient factor must be finite and nonnegative");
  g.part_ = FieldPart::frozen_gradient_norm;
  g.y_factor_ = y_factor;
  return g;
}

namespace {

double weight_at(const GrushinSpace& space, double a_weight, double rho_weight, double s, double r) {
  double w = 1.0;
  if (a_weight != 0.0) w = std::pow(s / r, space.mu() * a_weight);
  if (rho_weight != 0.0) w *= std::pow(r, rho_weight);
  return w;
}

double field_factor(const GrushinSpace& space, const WeightedIntegrand& g, double s, double t) {
  const auto& u = *g.field();
  double base = 0.0;
  switch (g.part()) {
    case FieldPart::none: return 1.0;
    case FieldPart::value: base = std::fabs(u.radial_value(s, t)); break;
    case FieldPart::gradient_norm: base = radial_gradient_norm(space, u.radial_gradient(s, t), s); break;
    case FieldPart::frozen_gradient_norm: {
      const RadialGradient gr = u.radial_gradient(s, t);
      base = std::hypot(gr.ds, g.y_factor() * gr.dt);
      break;
    }
  }
  if (base == 0.0) return 0.0;
  return g.power() == 1.0 ? base : std::pow(base, g.power());
}

}  // namespace

double WeightedIntegrand::operator()(const GrushinSpace& space, double s, double t) const {
  const double f = field_ ? field_factor(space, *this, s, t) : 1.0;
  if (f == 0.0) return 0.0;
  const double r = rho_radial(space, s, t);
  return f * weight_at(space, a_weight_, rho_weight_, s, r);
}

double WeightedIntegrand::at(const GrushinSpace& space, const Point& p) const {
  check_dims(space, p);
  double f = 1.0;
  if (field_) {
    double base = 0.0;
    switch (part_) {
      case FieldPart::none: break;
      case FieldPart::value: base = std::fabs(field_->value(p)); break;
      case FieldPart::gradient_norm: base = norm(grushin_gradient(space, *field_, p)); break;
      case FieldPart::frozen_gradient_norm: {
        auto g = field_->partials(p);
        if (!g) g = fd_partials(*field_, p);
        for (int j = space.d(); j < space.dim(); ++j) (*g)[j] *= y_factor_;
        base = norm(*g);
        break;
      }
    }
    if (base == 0.0) return 0.0;
    f = std::pow(base, power_);
  }
  return f * weight_at(space, a_weight_, rho_weight_, norm(p.x), rho(space, p));
}

std::string WeightedIntegrand::describe() const {
  std::string out = "(|x|^mu/rho^mu)^" + num(a_weight_) + " rho^" + num(rho_weight_);
  if (field_) {
    switch (part_) {
      case FieldPart::none: break;
      case FieldPart::value: out += " |u|^" + num(power_); break;
      case FieldPart::gradient_norm: out += " |grad_mu u|^" + num(power_); break;
      case FieldPart::frozen_gradient_norm:
        out += " |(grad_x u, " + num(y_factor_) + " grad_y u)|^" + num(power_);
        break;
    }
    out += " on " + field_->describe();
  }
  return out;
}

// ---------------------------------------------------------------- constants

double sphere_area(int n) {
  require(n >= 1, ErrorKind::invalid_argument, "sphere_area: dimension must be >= 1");
  // area(n + 2) = 2 pi area(n) / n, from area(1) = 2 and area(2) = 2 pi
  double w = (n % 2 == 1) ? 2.0 : 2.0 * std::numbers::pi;
  for (int m = (n % 2 == 1) ? 1 : 2; m < n; m += 2) w *= 2.0 * std::numbers::pi / m;
  return w;
}

namespace {

constexpr double kAngularTol = 1e-14;

QuadratureResult finish(const LineResult& line, const Budget& budget, std::string route) {
  QuadratureResult r;
  r.value = line.value;
  r.error_estimate = line.error;
  r.n_evals = budget.used;
  r.status = line.status;
  r.converged = line.status == QuadStatus::converged;
  r.route = std::move(route);
  if (r.status == QuadStatus::divergent) r.value = kInfinity;
  return r;
}

QuadratureResult compute_angular_mass(const GrushinSpace& space, double c) {
  const double mu = space.mu();
  const double sin_exp = (space.d() + c) / (1.0 + mu) - 1.0;
  const double cos_exp = space.k() - 1.0;
  const double scale = sphere_area(space.d()) * sphere_area(space.k()) * std::pow(1.0 + mu, -space.k());
  Budget budget{0, 20'000'000};
  if (sin_exp <= -1.0) {
    QuadratureResult r = finish(LineResult{kInfinity, 0.0, QuadStatus::divergent}, budget, "angular");
    r.note = "weight not integrable across {x=0}";
    return r;
  }
  const auto& rule = gauss_legendre(15);
  Integrand1D f = [&](double th) {
    return Sample{std::pow(std::sin(th), sin_exp) * (cos_exp == 0.0 ? 1.0 : std::pow(std::cos(th), cos_exp)), 0.0};
  };
  detail::PiecePlan plan{true, false, 1e-4};
  LineResult line = detail::integrate_pieces(f, 0.0, 0.5 * std::numbers::pi, {}, plan, kAngularTol, rule, budget);
  line.value *= scale;
  line.error *= scale;
  return finish(line, budget, "angular");
}

}  // namespace

QuadratureResult angular_mass(const GrushinSpace& space, double c) {
  using Key = std::tuple<int, int, double, double>;
  static std::mutex mutex;
  static std::map<Key, QuadratureResult> cache;
  const Key key{space.d(), space.k(), space.mu(), c};
  {
    std::lock_guard lock(mutex);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
  }
  QuadratureResult r = compute_angular_mass(space, c);
  std::lock_guard lock(mutex);
  cache.emplace(key, r);
  return r;
}

// ---------------------------------------------------------------- deterministic routes

namespace {

struct Domain {
  double rho_lo = 0;
  double rho_hi = 0;
  std::vector<double> breakpoints;  // gauge levels strictly inside (rho_lo, rho_hi)
};

Domain domain_of(const WeightedIntegrand& g, const QuadratureOptions& opts) {
  Domain dom;
  dom.rho_lo = opts.region.rho_min;
  dom.rho_hi = opts.region.rho_max;
  if (g.field()) dom.rho_hi = std::min(dom.rho_hi, g.field()->support_radius());
  require(std::isfinite(dom.rho_hi), ErrorKind::invalid_argument,
          "quadrature: unbounded domain; give a field with compact support or a finite region");
  require(dom.rho_lo >= 0.0, ErrorKind::invalid_argument, "quadrature: region rho_min must be nonnegative");
  if (g.field()) {
    for (double b : g.field()->breakpoints())
      if (b > dom.rho_lo && b < dom.rho_hi) dom.breakpoints.push_back(b);
    std::sort(dom.breakpoints.begin(), dom.breakpoints.end());
  }
  return dom;
}

// scale below which the rho- or s-integrand is a pure power of the variable
double power_regime(const Domain& dom) {
  double scale = dom.rho_hi;
  if (dom.rho_lo > 0.0) scale = std::min(scale, dom.rho_lo);
  if (!dom.breakpoints.empty()) scale = std::min(scale, dom.breakpoints.front());
  return 1e-2 * scale;
}

void require_params(const GrushinSpace& space, const WeightedIntegrand& g, double tol, const QuadratureOptions& opts) {
  require(tol > 0.0 && tol < 1.0, ErrorKind::invalid_argument, "quadrature: tol must lie in (0, 1)");
  require(opts.max_evals > 0, ErrorKind::invalid_argument, "quadrature: max_evals must be positive");
  require(g.bi_radial(), ErrorKind::invalid_argument,
          "quadrature: integrand is not bi-radial; use monte_carlo_full or analytic bookkeeping");
  if (g.field()) require(g.field()->space() == space, ErrorKind::dimension_mismatch, "quadrature: field lives on another space");
}

}  // namespace

QuadratureResult integrate_cartesian(const GrushinSpace& space, const WeightedIntegrand& g, double tol,
                                     const QuadratureOptions& opts) {
  require_params(space, g, tol, opts);
  const Domain dom = domain_of(g, opts);
  const auto& rule = gauss_legendre(opts.order);
  Budget budget{0, opts.max_evals};
  const double mu = space.mu();
  const int d = space.d(), k = space.k();
  const double inner_tol = 0.25 * tol;
  bool inner_divergent = false, inner_failed = false;

  // levels where the s-integrand changes form: breakpoints and the inner radius
  std::vector<double> s_cuts = dom.breakpoints;
  if (dom.rho_lo > 0.0) s_cuts.push_back(dom.rho_lo);

  Integrand1D outer = [&](double s) -> Sample {
    const double t_lo = s < dom.rho_lo ? gauge_sphere_t(space, dom.rho_lo, s) : 0.0;
    const double t_hi = gauge_sphere_t(space, dom.rho_hi, s);
    if (!(t_hi > t_lo)) return {};
    std::vector<double> t_cuts;
    for (double b : dom.breakpoints)
      if (b > s) t_cuts.push_back(gauge_sphere_t(space, b, s));
    Integrand1D inner = [&](double t) -> Sample {
      const double v = g(space, s, t);
      return {k == 1 ? v : v * std::pow(t, k - 1), 0.0};
    };
    detail::PiecePlan plan;
    plan.grade_first_left = t_lo == 0.0;
    plan.extrapolate_within = 1e-3 * std::min(1.0, std::pow(s, 1.0 + mu) / (1.0 + mu));
    LineResult line = detail::integrate_pieces(inner, t_lo, t_hi, t_cuts, plan, inner_tol, rule, budget);
    if (line.status == QuadStatus::divergent) inner_divergent = true;
    if (line.status == QuadStatus::not_converged) inner_failed = true;
    if (line.status != QuadStatus::converged) return {};
    const double js = d == 1 ? 1.0 : std::pow(s, d - 1);
    return {line.value * js, line.error * js};
  };

  detail::PiecePlan plan;
  plan.grade_first_left = true;
  plan.grade_pieces_right = true;
  plan.extrapolate_within = power_regime(dom);
  LineResult line = detail::integrate_pieces(outer, 0.0, dom.rho_hi, s_cuts, plan, 0.5 * tol, rule, budget);
  if (inner_divergent) line.status = QuadStatus::divergent;
  else if (inner_failed && line.status == QuadStatus::converged) line.status = QuadStatus::not_converged;
  const double omega = sphere_area(d) * sphere_area(k);
  line.value *= omega;
  line.error *= omega;
  return finish(line, budget, "cartesian");
}

namespace {

bool separable(const WeightedIntegrand& g, const QuadratureOptions& opts) {
  if (opts.force_2d) return false;
  if (!g.field()) return true;
  return g.field()->gauge_radial() && g.part() != FieldPart::frozen_gradient_norm;
}

QuadratureResult polar_separable(const GrushinSpace& space, const WeightedIntegrand& g, double tol,
                                 const QuadratureOptions& opts, const Domain& dom) {
  const double mu = space.mu();
  const double Q = space.Q();
  const double c = g.part() == FieldPart::gradient_norm ? mu * (g.a_weight() + g.power()) : mu * g.a_weight();
  const QuadratureResult ang = angular_mass(space, c);
  if (ang.status != QuadStatus::converged) {
    QuadratureResult r = ang;
    r.route = "polar_separable";
    return r;
  }
  const auto& rule = gauss_legendre(opts.order);
  Budget budget{0, opts.max_evals};
  // (|x|/rho)-powers live in the angular factor; only rho-powers remain here
  const double rho_exp = Q - 1.0 + g.rho_weight();
  const TrialField* u = g.field().get();
  const FieldPart part = g.part();
  const double P = g.power();
  Integrand1D radial = [&](double r) -> Sample {
    double f = 1.0;
    if (u) {
      const double base = std::fabs(part == FieldPart::value ? u->gauge_value(r) : u->gauge_derivative(r));
      if (base == 0.0) return {};
      f = std::pow(base, P);
    }
    return {f * std::pow(r, rho_exp), 0.0};
  };
  detail::PiecePlan plan;
  plan.grade_first_left = dom.rho_lo == 0.0;
  plan.extrapolate_within = power_regime(dom);
  LineResult line = detail::integrate_pieces(radial, dom.rho_lo, dom.rho_hi, dom.breakpoints, plan, 0.5 * tol, rule, budget);
  if (line.status == QuadStatus::converged) {
    const double v = line.value;
    line.value = ang.value * v;
    line.error = ang.error_estimate * std::fabs(v) + ang.value * line.error;
  }
  QuadratureResult r = finish(line, budget, "polar_separable");
  r.n_evals += ang.n_evals;
  return r;
}

QuadratureResult polar_2d(const GrushinSpace& space, const WeightedIntegrand& g, double tol,
                          const QuadratureOptions& opts, const Domain& dom) {
  const auto& rule = gauss_legendre(opts.order);
  Budget budget{0, opts.max_evals};
  const double mu = space.mu();
  const double Q = space.Q();
  const int d = space.d(), k = space.k();
  const double sin_exp = d / (1.0 + mu) - 1.0;
  const double jac = sphere_area(d) * sphere_area(k) * std::pow(1.0 + mu, -k);
  bool inner_divergent = false, inner_failed = false;

  Integrand1D outer = [&](double r) -> Sample {
    const double r_y = std::pow(r, 1.0 + mu) / (1.0 + mu);
    Integrand1D inner = [&](double th) -> Sample {
      const double sn = std::sin(th), cs = std::cos(th);
      const double s = r * std::pow(sn, 1.0 / (1.0 + mu));
      const double t = r_y * cs;
      const double v = g(space, s, t);
      if (v == 0.0) return {};
      return {v * std::pow(sn, sin_exp) * (k == 1 ? 1.0 : std::pow(cs, k - 1)), 0.0};
    };
    detail::PiecePlan plan{true, false, 1e-4};
    LineResult line = detail::integrate_pieces(inner, 0.0, 0.5 * std::numbers::pi, {}, plan, 0.25 * tol, rule, budget);
    if (line.status == QuadStatus::divergent) inner_divergent = true;
    if (line.status == QuadStatus::not_converged) inner_failed = true;
    if (line.status != QuadStatus::converged) return {};
    const double jr = std::pow(r, Q - 1.0);
    return {line.value * jr, line.error * jr};
  };
  detail::PiecePlan plan;
  plan.grade_first_left = dom.rho_lo == 0.0;
  plan.extrapolate_within = power_regime(dom);
  LineResult line = detail::integrate_pieces(outer, dom.rho_lo, dom.rho_hi, dom.breakpoints, plan, 0.5 * tol, rule, budget);
  if (inner_divergent) line.status = QuadStatus::divergent;
  else if (inner_failed && line.status == QuadStatus::converged) line.status = QuadStatus::not_converged;
  line.value *= jac;
  line.error *= jac;
  return finish(line, budget, "polar_2d");
}

}  // namespace

QuadratureResult integrate_polar(const GrushinSpace& space, const WeightedIntegrand& g, double tol,
                                 const QuadratureOptions& opts) {
  require_params(space, g, tol, opts);
  const Domain dom = domain_of(g, opts);
  if (separable(g, opts)) return polar_separable(space, g, tol, opts, dom);
  return polar_2d(space, g, tol, opts, dom);
}

// ---------------------------------------------------------------- Monte Carlo

namespace {

QuadratureResult mc_finish(double sum, double sum_sq, std::int64_t n, double volume, std::uint64_t seed, std::string route) {
  const double mean = sum / static_cast<double>(n);
  const double var = n > 1 ? std::max(0.0, (sum_sq - sum * mean) / static_cast<double>(n - 1)) : 0.0;
  QuadratureResult r;
  r.value = volume * mean;
  r.error_estimate = volume * std::sqrt(var / static_cast<double>(n));
  r.n_evals = n;
  r.converged = true;
  r.status = QuadStatus::converged;
  r.route = std::move(route);
  r.seed = seed;
  r.note = "error_estimate is one standard error";
  return r;
}

}  // namespace

QuadratureResult monte_carlo_oracle(const GrushinSpace& space, const WeightedIntegrand& g, const StBox& box,
                                    std::int64_t n, std::uint64_t seed) {
  require(n >= 1, ErrorKind::invalid_argument, "monte_carlo_oracle: n must be >= 1");
  require(g.bi_radial(), ErrorKind::invalid_argument, "monte_carlo_oracle: integrand must be bi-radial");
  require(box.s_min >= 0.0 && box.t_min >= 0.0 && box.s_max > box.s_min && box.t_max > box.t_min,
          ErrorKind::invalid_argument, "monte_carlo_oracle: box must be a nonempty subset of the quadrant");
  const int d = space.d(), k = space.k();
  const double omega = sphere_area(d) * sphere_area(k);
  Rng rng(seed);
  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    const double s = rng.uniform(box.s_min, box.s_max);
    const double t = rng.uniform(box.t_min, box.t_max);
    double v = g(space, s, t);
    if (v != 0.0) v *= std::pow(s, d - 1) * std::pow(t, k - 1);
    require(std::isfinite(v), ErrorKind::invalid_argument, "monte_carlo_oracle: non-finite sample");
    sum += v;
    sum_sq += v * v;
  }
  const double area = (box.s_max - box.s_min) * (box.t_max - box.t_min);
  return mc_finish(sum, sum_sq, n, omega * area, seed, "monte_carlo");
}

QuadratureResult monte_carlo_full(const GrushinSpace& space, const WeightedIntegrand& g, const Point& lower,
                                  const Point& upper, std::int64_t n, std::uint64_t seed) {
  require(n >= 1, ErrorKind::invalid_argument, "monte_carlo_full: n must be >= 1");
  check_dims(space, lower);
  check_dims(space, upper);
  double volume = 1.0;
  for (int i = 0; i < space.d(); ++i) volume *= upper.x[i] - lower.x[i];
  for (int j = 0; j < space.k(); ++j) volume *= upper.y[j] - lower.y[j];
  require(volume > 0.0, ErrorKind::invalid_argument, "monte_carlo_full: box must have positive volume");
  Rng rng(seed);
  Point p = lower;
  double sum = 0.0, sum_sq = 0.0;
  for (std::int64_t i = 0; i < n; ++i) {
    for (int a = 0; a < space.d(); ++a) p.x[a] = rng.uniform(lower.x[a], upper.x[a]);
    for (int b = 0; b < space.k(); ++b) p.y[b] = rng.uniform(lower.y[b], upper.y[b]);
    const double v = g.at(space, p);
    require(std::isfinite(v), ErrorKind::invalid_argument, "monte_carlo_full: non-finite sample");
    sum += v;
    sum_sq += v * v;
  }
  return mc_finish(sum, sum_sq, n, volume, seed, "monte_carlo_full");
}

// ---------------------------------------------------------------- divergence probe

ProbeResult divergence_probe(const GrushinSpace& space, const WeightedIntegrand& g, Region region,
                             const ProbeOptions& opts) {
  require(opts.annuli >= 3, ErrorKind::invalid_argument, "divergence_probe: need at least 3 annuli");
  ProbeResult out;
  const double xe = g.x_exponent(space);
  out.predicted_exponent = xe + g.rho_exponent(space) + space.Q();
  double start = 1.0;
  if (g.field()) {
    require(region == Region::near_origin, ErrorKind::invalid_argument,
            "divergence_probe: fields have compact support; probe them near the origin only");
    const auto ob = g.field()->origin_behavior();
    if (g.part() == FieldPart::value) out.predicted_exponent += g.power() * ob.value_exponent;
    if (g.part() == FieldPart::gradient_norm) out.predicted_exponent += g.power() * (ob.gradient_exponent);
    start = std::min(start, g.field()->support_radius());
    for (double b : g.field()->breakpoints())
      if (b > 0.0) start = std::min(start, b);
  }

  QuadratureOptions qopts;
  double sum = 0.0;
  std::vector<double> xs, ys;
  for (int j = 0; j < opts.annuli; ++j) {
    double lo, hi;
    if (region == Region::near_origin) {
      hi = std::ldexp(start, -j);
      lo = 0.5 * hi;
    } else {
      lo = std::ldexp(start, j);
      hi = 2.0 * lo;
    }
    qopts.region = GaugeRegion{lo, hi};
    const QuadratureResult r = integrate_polar(space, g, opts.tol, qopts);
    out.n_evals += r.n_evals;
    if (r.status == QuadStatus::divergent) {
      out.angular_divergence = true;
      out.convergent = false;
      out.fitted_exponent = std::numeric_limits<double>::quiet_NaN();
      return out;
    }
    require(r.converged, ErrorKind::not_converged, "divergence_probe: annulus integral did not converge");
    sum += r.value;
    out.radii.push_back(hi);
    out.masses.push_back(r.value);
    out.partial_sums.push_back(sum);
    if (r.value > 0.0) {
      xs.push_back(std::log(hi));
      ys.push_back(std::log(r.value));
    }
  }
  require(xs.size() >= 3, ErrorKind::not_converged, "divergence_probe: annulus masses vanish; nothing to fit");
  const LinearFit fit = fit_line(xs, ys);
  out.fitted_exponent = fit.slope;
  out.r_squared = fit.r_squared;
  if (!(fit.r_squared >= opts.min_r_squared)) {
    fail(ErrorKind::not_converged, "divergence_probe: inconclusive fit (R^2 = " + num(fit.r_squared) + ")");
  }
  constexpr double margin = 0.05;
  out.convergent = region == Region::near_origin ? out.fitted_exponent > margin : out.fitted_exponent < -margin;
  return out;
}

}  // namespace grushin
