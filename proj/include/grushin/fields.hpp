#pragma once

#include "grushin/trial_field.hpp"

#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace grushin {

// Fields of the form g(rho). Subclasses supply g and g'; partials go through
// the chain rule d_x rho = x |x|^{2mu} / rho^{2mu+1}, d_y rho = (1+mu) y / rho^{2mu+1}.
class GaugeField : public TrialField {
 public:
  using TrialField::TrialField;

  double value(const Point& p) const override;
  std::optional<std::vector<double>> partials(const Point& p) const override;
  std::optional<ext_real> value_ext(const ExtPoint& p) const override;
  bool bi_radial() const override { return true; }
  double radial_value(double s, double t) const override;
  RadialGradient radial_gradient(double s, double t) const override;
  bool gauge_radial() const override { return true; }

 protected:
  // extended-precision profile; families without one leave it empty
  virtual std::optional<ext_real> gauge_value_ext(const ext_real&) const { return std::nullopt; }
};

// Smoothstep S(tau) on [0, 1] built from h(t) = exp(-1/t): S = h(tau) / (h(tau) + h(1 - tau)).
double smoothstep(double tau);
double smoothstep_derivative(double tau);

std::shared_ptr<const GaugeField> make_bump(const GrushinSpace& space, double r_inner, double r_outer);

// rho^{-c} log(1/rho) on [eps, 1] with c = gamma + Q/r, constant below eps, zero above 1
std::shared_ptr<const GaugeField> make_log_family(const GrushinSpace& space, double eps, double gamma, double r);

inline constexpr double kDefaultCutRatio = 1e3;

// rho^e with e = -(Q - p + alpha p)/p + eps_shift on B_1, times a cutoff that is
// smooth in log(rho) and falls from 1 at rho = 1 to 0 at rho = cut_ratio
std::shared_ptr<const GaugeField> make_hardy_extremal(const GrushinSpace& space, double p, double alpha,
                                                      double eps_shift, double cut_ratio = kDefaultCutRatio);

// rho^kappa on the whole space; unbounded support, for geometry checks
std::shared_ptr<const GaugeField> make_gauge_power(const GrushinSpace& space, double kappa);

// Profile f(s, t) with derivatives; for corpora and tests.
struct BiRadialProfile {
  std::function<double(double, double)> value;
  std::function<RadialGradient(double, double)> gradient;
  double support_radius = kInfinity;
  Smoothness smoothness = Smoothness::smooth;
  std::vector<double> breakpoints;
  OriginBehavior origin;
  std::string name = "bi_radial";
};

FieldPtr make_bi_radial(const GrushinSpace& space, BiRadialProfile profile);

// Arbitrary pointwise field (not bi-radial).
struct PointProfile {
  std::function<double(const Point&)> value;
  std::function<std::vector<double>(const Point&)> partials;  // may be empty
  std::function<ext_real(const ExtPoint&)> value_ext;          // may be empty
  double support_radius = kInfinity;
  Smoothness smoothness = Smoothness::smooth;
  std::string name = "point_field";
};

FieldPtr make_point_field(const GrushinSpace& space, PointProfile profile);

FieldPtr dilate_field(const FieldPtr& u, double lambda);
FieldPtr translate_field(const FieldPtr& u, const std::vector<double>& x0, const std::vector<double>& y0,
                         double lambda);
FieldPtr scale_field(const FieldPtr& u, double c);

}  // namespace grushin
