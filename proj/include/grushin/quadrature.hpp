#pragma once

#include "grushin/params.hpp"
#include "grushin/trial_field.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace grushin {

enum class FieldPart {
  none,           // pure weight
  value,          // |u|^power
  gradient_norm,  // |grad_mu u|^power
  // |(grad_x u, L grad_y u)|^power with a fixed factor L in place of |x|^mu
  frozen_gradient_norm,
};

const char* to_string(FieldPart part) noexcept;

// (|x|^mu / rho^mu)^a_weight * rho^rho_weight * |field part|^power
class WeightedIntegrand {
 public:
  static WeightedIntegrand pure_weight(double a_weight, double rho_weight);
  static WeightedIntegrand of_value(FieldPtr field, double a_weight, double rho_weight, double power);
  static WeightedIntegrand of_gradient(FieldPtr field, double a_weight, double rho_weight, double power);
  static WeightedIntegrand of_frozen_gradient(FieldPtr field, double y_factor, double power);

  double a_weight() const noexcept { return a_weight_; }
  double rho_weight() const noexcept { return rho_weight_; }
  double power() const noexcept { return power_; }
  FieldPart part() const noexcept { return part_; }
  const FieldPtr& field() const noexcept { return field_; }
  double y_factor() const noexcept { return y_factor_; }
  bool bi_radial() const noexcept { return !field_ || field_->bi_radial(); }

  // |x|- and rho-exponents of the weight alone, in the form integrable() takes
  double x_exponent(const GrushinSpace& space) const { return space.mu() * a_weight_; }
  double rho_exponent(const GrushinSpace& space) const { return rho_weight_ - space.mu() * a_weight_; }

  // integrand at block norms (s, t); bi-radial fields only
  double operator()(const GrushinSpace& space, double s, double t) const;
  // integrand at a point of R^{d+k}
  double at(const GrushinSpace& space, const Point& p) const;

  std::string describe() const;

 private:
  double a_weight_ = 0, rho_weight_ = 0, power_ = 0, y_factor_ = 1;
  FieldPart part_ = FieldPart::none;
  FieldPtr field_;
};

// canonical value of an exponent: algebraically equal tuples that differ in the
// last bits of their floating-point arithmetic map to the same grid point
double snap_exponent(double v);

enum class QuadStatus { converged, not_converged, divergent };

const char* to_string(QuadStatus s) noexcept;

struct QuadratureResult {
  double value = 0;
  double error_estimate = 0;
  std::int64_t n_evals = 0;
  bool converged = false;
  QuadStatus status = QuadStatus::not_converged;
  std::string route;
  std::optional<std::uint64_t> seed;
  std::string note;
};

// Annulus rho_min <= rho <= rho_max to integrate over (default: the field's support).
struct GaugeRegion {
  double rho_min = 0;
  double rho_max = kInfinity;
};

struct QuadratureOptions {
  int order = 15;                      // Gauss-Legendre points per cell
  std::int64_t max_evals = 40'000'000;
  GaugeRegion region;
  bool force_2d = false;               // polar route: skip the separable gauge-radial path
};

QuadratureResult integrate_cartesian(const GrushinSpace& space, const WeightedIntegrand& g, double tol,
                                     const QuadratureOptions& opts = {});
QuadratureResult integrate_polar(const GrushinSpace& space, const WeightedIntegrand& g, double tol,
                                 const QuadratureOptions& opts = {});

// omega_{d-1} omega_{k-1} (1+mu)^{-k} int_0^{pi/2} sin^{(d+c)/(1+mu)-1} cos^{k-1} dtheta:
// the rho-sphere mass of the weight (|x|/rho)^c. Cached per (space, c).
QuadratureResult angular_mass(const GrushinSpace& space, double c);
// surface area of the unit sphere S^{n-1} in R^n (omega_0 = 2)
double sphere_area(int n);

struct StBox {
  double s_min = 0, s_max = 1, t_min = 0, t_max = 1;
};

// plain Monte Carlo over (s, t) with the Jacobian omega omega s^{d-1} t^{k-1}
QuadratureResult monte_carlo_oracle(const GrushinSpace& space, const WeightedIntegrand& g, const StBox& box,
                                    std::int64_t n, std::uint64_t seed);

// plain Monte Carlo over an axis-aligned box of R^{d+k}; works for fields that are not bi-radial
QuadratureResult monte_carlo_full(const GrushinSpace& space, const WeightedIntegrand& g, const Point& lower,
                                  const Point& upper, std::int64_t n, std::uint64_t seed);

struct ProbeResult {
  double fitted_exponent = 0;   // growth of the dyadic-annulus mass in the annulus radius
  double predicted_exponent = 0;
  double r_squared = 0;
  bool convergent = false;
  bool angular_divergence = false;  // the |x|-weight is not integrable across {x = 0}
  std::vector<double> radii;         // outer radius of each annulus
  std::vector<double> masses;
  std::vector<double> partial_sums;
  std::int64_t n_evals = 0;
};

struct ProbeOptions {
  int annuli = 14;
  double min_r_squared = 0.999;
  double tol = 1e-10;
};

// integrates dyadic annuli toward the origin or infinity and fits the growth rate
ProbeResult divergence_probe(const GrushinSpace& space, const WeightedIntegrand& g, Region region,
                             const ProbeOptions& opts = {});

}  // namespace grushin
