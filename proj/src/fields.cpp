#include "grushin/fields.hpp"

#include "grushin/error.hpp"
#include "grushin/format.hpp"
#include "grushin/geometry.hpp"
#include "grushin/params.hpp"

#include <cmath>

namespace grushin {

// ---------------------------------------------------------------- gauge fields

double GaugeField::value(const Point& p) const { return gauge_value(rho(space(), p)); }

std::optional<std::vector<double>> GaugeField::partials(const Point& p) const {
  const GrushinSpace& sp = space();
  const double r = rho(sp, p);
  std::vector<double> out(sp.dim(), 0.0);
  if (r == 0.0) return out;
  const double mu = sp.mu();
  const double gp = gauge_derivative(r);
  if (gp == 0.0) return out;
  const double s = norm(p.x);
  // x_i |x|^{2mu} / rho^{2mu+1} and (1+mu) y_j / rho^{2mu+1}, arranged to avoid overflow near 0
  const double cx = gp * std::pow(s / r, 2.0 * mu) / r;
  const double cy = gp * (1.0 + mu) / std::pow(r, 1.0 + mu) / std::pow(r, mu);
  for (int i = 0; i < sp.d(); ++i) out[i] = cx * p.x[i];
  for (int j = 0; j < sp.k(); ++j) out[sp.d() + j] = cy * p.y[j];
  return out;
}

std::optional<ext_real> GaugeField::value_ext(const ExtPoint& p) const {
  return gauge_value_ext(rho_ext(space(), p));
}

double GaugeField::radial_value(double s, double t) const { return gauge_value(rho_radial(space(), s, t)); }

RadialGradient GaugeField::radial_gradient(double s, double t) const {
  const double r = rho_radial(space(), s, t);
  if (r == 0.0) return {};
  const double gp = gauge_derivative(r);
  if (gp == 0.0) return {};
  const double mu = space().mu();
  return {gp * std::pow(s / r, 1.0 + 2.0 * mu), gp * (1.0 + mu) * t / std::pow(r, 1.0 + mu) / std::pow(r, mu)};
}

double smoothstep(double tau) {
  if (tau <= 0.0) return 0.0;
  if (tau >= 1.0) return 1.0;
  // h(1-tau)/h(tau) = exp(z); logistic form stays finite at both ends
  const double z = 1.0 / tau - 1.0 / (1.0 - tau);
  return 1.0 / (1.0 + std::exp(z));
}

double smoothstep_derivative(double tau) {
  if (tau <= 0.0 || tau >= 1.0) return 0.0;
  const double S = smoothstep(tau);
  const double u = 1.0 - tau;
  return S * (1.0 - S) * (1.0 / (tau * tau) + 1.0 / (u * u));
}

namespace {

class BumpField final : public GaugeField {
 public:
  BumpField(const GrushinSpace& space, double r_in, double r_out) : GaugeField(space), r_in_(r_in), r_out_(r_out) {}

  double gauge_value(double r) const override {
    if (r <= r_in_) return 1.0;
    if (r >= r_out_) return 0.0;
    return smoothstep((r_out_ - r) / (r_out_ - r_in_));
  }
  double gauge_derivative(double r) const override {
    if (r <= r_in_ || r >= r_out_) return 0.0;
    const double w = r_out_ - r_in_;
    return -smoothstep_derivative((r_out_ - r) / w) / w;
  }
  double support_radius() const override { return r_out_; }
  Smoothness smoothness() const override { return Smoothness::smooth; }
  std::vector<double> breakpoints() const override { return {r_in_, r_out_}; }
  OriginBehavior origin_behavior() const override { return {0.0, 0.0, true}; }
  std::string describe() const override { return "bump(r_inner=" + num(r_in_) + ",r_outer=" + num(r_out_) + ")"; }

 private:
  double r_in_, r_out_;
};

class LogField final : public GaugeField {
 public:
  LogField(const GrushinSpace& space, double eps, double gamma, double r)
      : GaugeField(space), eps_(eps), gamma_(gamma), r_(r), c_(gamma + space.Q() / r) {
    plateau_ = std::pow(eps_, -c_) * -std::log(eps_);
  }

  // interface spheres rho = eps and rho = 1 take the inner branch
  double gauge_value(double rho) const override {
    if (rho <= eps_) return plateau_;
    if (rho >= 1.0) return 0.0;
    return std::pow(rho, -c_) * -std::log(rho);
  }
  double gauge_derivative(double rho) const override {
    if (rho <= eps_ || rho > 1.0) return 0.0;
    return -std::pow(rho, -c_ - 1.0) * (c_ * -std::log(rho) + 1.0);
  }
  double support_radius() const override { return 1.0; }
  Smoothness smoothness() const override { return Smoothness::lipschitz_piecewise; }
  std::vector<double> breakpoints() const override { return {eps_, 1.0}; }
  OriginBehavior origin_behavior() const override { return {0.0, 0.0, true}; }
  std::string describe() const override {
    return "log(eps=" + num(eps_) + ",gamma=" + num(gamma_) + ",r=" + num(r_) + ")";
  }

 protected:
  std::optional<ext_real> gauge_value_ext(const ext_real& rho) const override {
    if (rho <= eps_) return ext_real(plateau_);
    if (rho >= 1) return ext_real(0);
    return pow(rho, ext_real(-c_)) * -log(rho);
  }

 private:
  double eps_, gamma_, r_, c_, plateau_;
};

class HardyExtremalField final : public GaugeField {
 public:
  HardyExtremalField(const GrushinSpace& space, double p, double alpha, double shift, double cut)
      : GaugeField(space), p_(p), alpha_(alpha), shift_(shift), cut_(cut), log_cut_(std::log(cut)) {
    exponent_ = -(space.Q() - p + alpha * p) / p + shift;
  }

  double exponent() const { return exponent_; }

  double gauge_value(double rho) const override {
    if (rho >= cut_) return 0.0;
    return std::pow(rho, exponent_) * cutoff(rho);
  }
  double gauge_derivative(double rho) const override {
    if (rho >= cut_) return 0.0;
    const double pw = std::pow(rho, exponent_);
    double out = exponent_ == 0.0 ? 0.0 : exponent_ * pw / rho * cutoff(rho);
    if (rho > 1.0) out -= pw * smoothstep_derivative(tau(rho)) / (rho * log_cut_);
    return out;
  }
  double support_radius() const override { return cut_; }
  Smoothness smoothness() const override { return Smoothness::smooth; }
  std::vector<double> breakpoints() const override {
    std::vector<double> b{1.0};
    for (int i = 1; i < 8; ++i) b.push_back(std::exp(log_cut_ * i / 8.0));
    b.push_back(cut_);
    return b;
  }
  OriginBehavior origin_behavior() const override { return {exponent_, exponent_ - 1.0, exponent_ == 0.0}; }
  std::string describe() const override {
    return "hardy_extremal(p=" + num(p_) + ",alpha=" + num(alpha_) + ",eps_shift=" + num(shift_) +
           ",cut_ratio=" + num(cut_) + ")";
  }

 private:
  double tau(double rho) const { return (log_cut_ - std::log(rho)) / log_cut_; }
  double cutoff(double rho) const { return rho <= 1.0 ? 1.0 : smoothstep(tau(rho)); }

  double p_, alpha_, shift_, cut_, log_cut_;
  double exponent_;
};

class GaugePowerField final : public GaugeField {
 public:
  GaugePowerField(const GrushinSpace& space, double kappa) : GaugeField(space), kappa_(kappa) {}

  double gauge_value(double rho) const override { return std::pow(rho, kappa_); }
  double gauge_derivative(double rho) const override { return kappa_ * std::pow(rho, kappa_ - 1.0); }
  double support_radius() const override { return kInfinity; }
  Smoothness smoothness() const override { return Smoothness::smooth; }
  OriginBehavior origin_behavior() const override { return {kappa_, kappa_ - 1.0, kappa_ == 0.0}; }
  std::string describe() const override { return "gauge_power(kappa=" + num(kappa_) + ")"; }

 protected:
  std::optional<ext_real> gauge_value_ext(const ext_real& rho) const override { return pow(rho, ext_real(kappa_)); }

 private:
  double kappa_;
};

}  // namespace

std::shared_ptr<const GaugeField> make_bump(const GrushinSpace& space, double r_inner, double r_outer) {
  require(r_inner > 0.0 && r_inner < r_outer && std::isfinite(r_outer), ErrorKind::invalid_argument,
          "make_bump: need 0 < r_inner < r_outer");
  return std::make_shared<BumpField>(space, r_inner, r_outer);
}

std::shared_ptr<const GaugeField> make_log_family(const GrushinSpace& space, double eps, double gamma, double r) {
  require(eps > 0.0 && eps < 1.0, ErrorKind::invalid_argument, "make_log_family: eps must lie in (0, 1)");
  require(r > 0.0 && std::isfinite(r), ErrorKind::invalid_argument, "make_log_family: r must be positive");
  require(std::isfinite(gamma), ErrorKind::invalid_argument, "make_log_family: gamma must be finite");
  return std::make_shared<LogField>(space, eps, gamma, r);
}

std::shared_ptr<const GaugeField> make_hardy_extremal(const GrushinSpace& space, double p, double alpha,
                                                      double eps_shift, double cut_ratio) {
  require(p > 1.0, ErrorKind::invalid_argument, "make_hardy_extremal: p must exceed 1");
  const double denom = space.Q() - p + alpha * p;
  require(denom > 0.0, ErrorKind::inapplicable, "make_hardy_extremal: Q - p + alpha*p <= 0, constant inapplicable");
  require(eps_shift > 0.0 && std::isfinite(eps_shift), ErrorKind::invalid_argument,
          "make_hardy_extremal: eps_shift must be positive");
  require(cut_ratio > 1.0 && std::isfinite(cut_ratio), ErrorKind::invalid_argument,
          "make_hardy_extremal: cut_ratio must exceed 1");
  auto field = std::make_shared<HardyExtremalField>(space, p, alpha, eps_shift, cut_ratio);
  // both Hardy integrals near the origin: weighted |u|^p and rho^{alpha p}|grad u|^p
  const double mu = space.mu();
  const double e = field->exponent();
  const bool lhs_ok = integrable(space, mu * p, alpha * p - p - mu * p + e * p, Region::near_origin).integrable;
  const bool rhs_ok = e == 0.0 || integrable(space, mu * p, alpha * p + (e - 1.0) * p - mu * p, Region::near_origin).integrable;
  require(lhs_ok && rhs_ok, ErrorKind::integrability, "make_hardy_extremal: Hardy integrals diverge at the origin");
  return field;
}

std::shared_ptr<const GaugeField> make_gauge_power(const GrushinSpace& space, double kappa) {
  require(std::isfinite(kappa), ErrorKind::invalid_argument, "make_gauge_power: kappa must be finite");
  return std::make_shared<GaugePowerField>(space, kappa);
}

// ---------------------------------------------------------------- generic profiles

namespace {

class BiRadialField final : public TrialField {
 public:
  BiRadialField(const GrushinSpace& space, BiRadialProfile prof) : TrialField(space), prof_(std::move(prof)) {}

  double value(const Point& p) const override {
    check_dims(space(), p);
    return radial_value(norm(p.x), norm(p.y));
  }
  std::optional<std::vector<double>> partials(const Point& p) const override {
    if (!prof_.gradient) return std::nullopt;
    check_dims(space(), p);
    const double s = norm(p.x), t = norm(p.y);
    const RadialGradient g = radial_gradient(s, t);
    std::vector<double> out(space().dim(), 0.0);
    for (int i = 0; i < space().d(); ++i) out[i] = s > 0.0 ? g.ds * p.x[i] / s : 0.0;
    for (int j = 0; j < space().k(); ++j) out[space().d() + j] = t > 0.0 ? g.dt * p.y[j] / t : 0.0;
    return out;
  }
  double radial_value(double s, double t) const override {
    if (outside(s, t)) return 0.0;
    return prof_.value(s, t);
  }
  RadialGradient radial_gradient(double s, double t) const override {
    if (outside(s, t)) return {};
    if (!prof_.gradient) return TrialField::radial_gradient(s, t);
    return prof_.gradient(s, t);
  }
  double support_radius() const override { return prof_.support_radius; }
  bool bi_radial() const override { return true; }
  Smoothness smoothness() const override { return prof_.smoothness; }
  std::vector<double> breakpoints() const override { return prof_.breakpoints; }
  OriginBehavior origin_behavior() const override { return prof_.origin; }
  std::string describe() const override { return prof_.name; }

 private:
  bool outside(double s, double t) const {
    return std::isfinite(prof_.support_radius) && rho_radial(space(), s, t) > prof_.support_radius;
  }
  BiRadialProfile prof_;
};

class PointField final : public TrialField {
 public:
  PointField(const GrushinSpace& space, PointProfile prof) : TrialField(space), prof_(std::move(prof)) {}

  double value(const Point& p) const override {
    check_dims(space(), p);
    return prof_.value(p);
  }
  std::optional<std::vector<double>> partials(const Point& p) const override {
    if (!prof_.partials) return std::nullopt;
    return prof_.partials(p);
  }
  std::optional<ext_real> value_ext(const ExtPoint& p) const override {
    if (!prof_.value_ext) return std::nullopt;
    return prof_.value_ext(p);
  }
  double support_radius() const override { return prof_.support_radius; }
  bool bi_radial() const override { return false; }
  Smoothness smoothness() const override { return prof_.smoothness; }
  std::string describe() const override { return prof_.name; }

 private:
  PointProfile prof_;
};

}  // namespace

FieldPtr make_bi_radial(const GrushinSpace& space, BiRadialProfile profile) {
  require(static_cast<bool>(profile.value), ErrorKind::invalid_argument, "make_bi_radial: value function missing");
  require(profile.support_radius > 0.0, ErrorKind::invalid_argument, "make_bi_radial: support radius must be positive");
  return std::make_shared<BiRadialField>(space, std::move(profile));
}

FieldPtr make_point_field(const GrushinSpace& space, PointProfile profile) {
  require(static_cast<bool>(profile.value), ErrorKind::invalid_argument, "make_point_field: value function missing");
  return std::make_shared<PointField>(space, std::move(profile));
}

// ---------------------------------------------------------------- transforms

namespace {

class DilatedField final : public TrialField {
 public:
  DilatedField(FieldPtr base, double lambda)
      : TrialField(base->space()), base_(std::move(base)), lambda_(lambda),
        lambda_y_(std::pow(lambda, 1.0 + base_->space().mu())) {}

  double value(const Point& p) const override { return base_->value(dilate(space(), lambda_, p)); }
  std::optional<std::vector<double>> partials(const Point& p) const override {
    auto g = base_->partials(dilate(space(), lambda_, p));
    if (!g) return std::nullopt;
    for (int i = 0; i < space().dim(); ++i) (*g)[i] *= i < space().d() ? lambda_ : lambda_y_;
    return g;
  }
  std::optional<ext_real> value_ext(const ExtPoint& p) const override {
    ExtPoint q = p;
    for (auto& c : q.x) c *= lambda_;
    for (auto& c : q.y) c *= lambda_y_;
    return base_->value_ext(q);
  }
  double support_radius() const override { return base_->support_radius() / lambda_; }
  bool bi_radial() const override { return base_->bi_radial(); }
  Smoothness smoothness() const override { return base_->smoothness(); }
  std::string describe() const override { return "dilate(" + base_->describe() + ",lambda=" + num(lambda_) + ")"; }

  double radial_value(double s, double t) const override { return base_->radial_value(lambda_ * s, lambda_y_ * t); }
  RadialGradient radial_gradient(double s, double t) const override {
    const RadialGradient g = base_->radial_gradient(lambda_ * s, lambda_y_ * t);
    return {lambda_ * g.ds, lambda_y_ * g.dt};
  }
  bool gauge_radial() const override { return base_->gauge_radial(); }
  double gauge_value(double r) const override { return base_->gauge_value(lambda_ * r); }
  double gauge_derivative(double r) const override { return lambda_ * base_->gauge_derivative(lambda_ * r); }
  std::vector<double> breakpoints() const override {
    auto b = base_->breakpoints();
    for (double& v : b) v /= lambda_;
    return b;
  }
  OriginBehavior origin_behavior() const override { return base_->origin_behavior(); }

 private:
  FieldPtr base_;
  double lambda_, lambda_y_;
};

class TranslatedField final : public TrialField {
 public:
  TranslatedField(FieldPtr base, std::vector<double> shift_x, std::vector<double> shift_y, double support, std::string label)
      : TrialField(base->space()), base_(std::move(base)), sx_(std::move(shift_x)), sy_(std::move(shift_y)),
        support_(support), label_(std::move(label)) {}

  double value(const Point& p) const override { return base_->value(shifted(p)); }
  std::optional<std::vector<double>> partials(const Point& p) const override { return base_->partials(shifted(p)); }
  std::optional<ext_real> value_ext(const ExtPoint& p) const override {
    ExtPoint q = p;
    for (size_t i = 0; i < q.x.size(); ++i) q.x[i] -= sx_[i];
    for (size_t j = 0; j < q.y.size(); ++j) q.y[j] -= sy_[j];
    return base_->value_ext(q);
  }
  double support_radius() const override { return support_; }
  bool bi_radial() const override { return false; }
  Smoothness smoothness() const override { return base_->smoothness(); }
  std::string describe() const override { return label_; }

 private:
  Point shifted(const Point& p) const {
    check_dims(space(), p);
    Point q = p;
    for (size_t i = 0; i < q.x.size(); ++i) q.x[i] -= sx_[i];
    for (size_t j = 0; j < q.y.size(); ++j) q.y[j] -= sy_[j];
    return q;
  }
  FieldPtr base_;
  std::vector<double> sx_, sy_;
  double support_;
  std::string label_;
};

class ScaledField final : public TrialField {
 public:
  ScaledField(FieldPtr base, double c) : TrialField(base->space()), base_(std::move(base)), c_(c) {}

  double value(const Point& p) const override { return c_ * base_->value(p); }
  std::optional<std::vector<double>> partials(const Point& p) const override {
    auto g = base_->partials(p);
    if (g)
      for (double& v : *g) v *= c_;
    return g;
  }
  std::optional<ext_real> value_ext(const ExtPoint& p) const override {
    auto v = base_->value_ext(p);
    if (v) *v *= c_;
    return v;
  }
  double support_radius() const override { return base_->support_radius(); }
  bool bi_radial() const override { return base_->bi_radial(); }
  Smoothness smoothness() const override { return base_->smoothness(); }
  std::string describe() const override { return "scale(" + base_->describe() + ",c=" + num(c_) + ")"; }
  double radial_value(double s, double t) const override { return c_ * base_->radial_value(s, t); }
  RadialGradient radial_gradient(double s, double t) const override {
    const RadialGradient g = base_->radial_gradient(s, t);
    return {c_ * g.ds, c_ * g.dt};
  }
  bool gauge_radial() const override { return base_->gauge_radial(); }
  double gauge_value(double r) const override { return c_ * base_->gauge_value(r); }
  double gauge_derivative(double r) const override { return c_ * base_->gauge_derivative(r); }
  std::vector<double> breakpoints() const override { return base_->breakpoints(); }
  OriginBehavior origin_behavior() const override { return base_->origin_behavior(); }

 private:
  FieldPtr base_;
  double c_;
};

}  // namespace

FieldPtr dilate_field(const FieldPtr& u, double lambda) {
  require(u != nullptr, ErrorKind::invalid_argument, "dilate_field: null field");
  require(std::isfinite(lambda) && lambda > 0.0, ErrorKind::invalid_argument, "dilate_field: lambda must be positive");
  return std::make_shared<DilatedField>(u, lambda);
}

FieldPtr translate_field(const FieldPtr& u, const std::vector<double>& x0, const std::vector<double>& y0,
                         double lambda) {
  require(u != nullptr, ErrorKind::invalid_argument, "translate_field: null field");
  const GrushinSpace& sp = u->space();
  check_dims(sp, Point{x0, y0});
  require(std::isfinite(lambda) && lambda > 0.0, ErrorKind::invalid_argument, "translate_field: lambda must be positive");
  require(norm(x0) > 0.0, ErrorKind::invalid_argument, "translate_field: x0 must be nonzero");
  const double R = u->support_radius();
  require(std::isfinite(R), ErrorKind::invalid_argument, "translate_field: base field must be compactly supported");
  const Point shift = dilate(sp, lambda, Point{x0, y0});
  // the base support sits in |x| <= R, |y| <= R^{1+mu}/(1+mu); rho is monotone in both block norms
  const double mu = sp.mu();
  const double bound = rho_radial(sp, R + norm(shift.x), std::pow(R, 1.0 + mu) / (1.0 + mu) + norm(shift.y));
  std::string label = "translate(" + u->describe() + ",lambda=" + num(lambda) + ")";
  return std::make_shared<TranslatedField>(u, shift.x, shift.y, bound, std::move(label));
}

FieldPtr scale_field(const FieldPtr& u, double c) {
  require(u != nullptr, ErrorKind::invalid_argument, "scale_field: null field");
  require(std::isfinite(c), ErrorKind::invalid_argument, "scale_field: factor must be finite");
  return std::make_shared<ScaledField>(u, c);
}

}  // namespace grushin
