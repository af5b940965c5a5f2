#pragma once

#include "grushin/space.hpp"

#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace grushin {

enum class Smoothness { smooth, lipschitz_piecewise };

const char* to_string(Smoothness s) noexcept;

// partial derivatives of a bi-radial profile f(s, t), s = |x|, t = |y|
struct RadialGradient {
  double ds = 0.0;
  double dt = 0.0;
};

// Power-law envelope near the origin: |u| <~ rho^value_exponent and
// |grad u| <~ rho^gradient_exponent. Used by integrability pre-checks.
struct OriginBehavior {
  double value_exponent = 0.0;
  double gradient_exponent = 0.0;
  bool gradient_vanishes = false;  // identically zero on a neighbourhood of 0
};

class TrialField {
 public:
  explicit TrialField(GrushinSpace space) : space_(space) {}
  virtual ~TrialField() = default;

  const GrushinSpace& space() const noexcept { return space_; }

  virtual double value(const Point& p) const = 0;
  // (d_x1 u, ..., d_xd u, d_y1 u, ..., d_yk u); nullopt when the family has no closed form
  virtual std::optional<std::vector<double>> partials(const Point& p) const;
  virtual std::optional<ext_real> value_ext(const ExtPoint& p) const;

  // rho-ball containing the support (infinity for unbounded fields)
  virtual double support_radius() const = 0;
  virtual bool bi_radial() const = 0;
  virtual Smoothness smoothness() const = 0;
  virtual std::string describe() const = 0;

  // only meaningful for bi-radial fields
  virtual double radial_value(double s, double t) const;
  virtual RadialGradient radial_gradient(double s, double t) const;

  // fields of the form g(rho)
  virtual bool gauge_radial() const { return false; }
  virtual double gauge_value(double rho) const;
  virtual double gauge_derivative(double rho) const;

  // gauge levels where the field or its gradient has reduced smoothness;
  // quadrature splits its cells there
  virtual std::vector<double> breakpoints() const { return {}; }
  virtual OriginBehavior origin_behavior() const { return {}; }

 private:
  GrushinSpace space_;
};

using FieldPtr = std::shared_ptr<const TrialField>;

// |grad_mu u| for a bi-radial field from its profile derivatives
double radial_gradient_norm(const GrushinSpace& space, const RadialGradient& g, double s);

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

}  // namespace grushin
