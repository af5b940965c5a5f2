#include "grushin/geometry.hpp"

#include "grushin/error.hpp"
#include "grushin/format.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace grushin {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::invalid_argument: return "invalid_argument";
    case ErrorKind::dimension_mismatch: return "dimension_mismatch";
    case ErrorKind::inapplicable: return "inapplicable";
    case ErrorKind::degenerate: return "degenerate";
    case ErrorKind::inadmissible: return "inadmissible";
    case ErrorKind::integrability: return "integrability";
    case ErrorKind::divergent: return "divergent";
    case ErrorKind::not_converged: return "not_converged";
    case ErrorKind::config: return "config";
  }
  return "unknown";
}

const char* to_string(Smoothness s) noexcept {
  return s == Smoothness::smooth ? "smooth" : "lipschitz_piecewise";
}

GrushinSpace::GrushinSpace(int d, int k, double mu) : d_(d), k_(k), mu_(mu) {
  require(d >= 1, ErrorKind::invalid_argument, "space: d must be >= 1");
  require(k >= 1, ErrorKind::invalid_argument, "space: k must be >= 1");
  require(std::isfinite(mu) && mu > 0.0, ErrorKind::invalid_argument, "space: mu must be positive");
}

Point Point::origin(const GrushinSpace& space) {
  return Point{std::vector<double>(space.d(), 0.0), std::vector<double>(space.k(), 0.0)};
}

void check_dims(const GrushinSpace& space, const Point& p) {
  if (static_cast<int>(p.x.size()) != space.d() || static_cast<int>(p.y.size()) != space.k()) {
    std::ostringstream os;
    os << "point has (" << p.x.size() << ", " << p.y.size() << ") coordinates, space needs (" << space.d()
       << ", " << space.k() << ")";
    fail(ErrorKind::dimension_mismatch, os.str());
  }
}

double norm(const std::vector<double>& v) {
  double acc = 0.0;
  for (double c : v) acc = std::hypot(acc, c);
  return acc;
}

double rho_radial(const GrushinSpace& space, double s, double t) {
  const double mu = space.mu();
  if (s == 0.0 && t == 0.0) return 0.0;
  const double a = std::pow(s, 2.0 + 2.0 * mu);
  const double b = (1.0 + mu) * t;
  return std::pow(a + b * b, 1.0 / (2.0 + 2.0 * mu));
}

double rho(const GrushinSpace& space, const Point& p) {
  check_dims(space, p);
  return rho_radial(space, norm(p.x), norm(p.y));
}

ext_real rho_ext(const GrushinSpace& space, const ExtPoint& p) {
  ext_real s2 = 0, t2 = 0;
  for (const auto& c : p.x) s2 += c * c;
  for (const auto& c : p.y) t2 += c * c;
  if (s2 == 0 && t2 == 0) return ext_real(0);
  const ext_real mu = space.mu();
  const ext_real b = 1 + mu;
  return pow(pow(s2, b) + b * b * t2, 1 / (2 * b));
}

Point dilate(const GrushinSpace& space, double lambda, const Point& p) {
  check_dims(space, p);
  require(std::isfinite(lambda) && lambda > 0.0, ErrorKind::invalid_argument, "dilate: lambda must be positive");
  Point out = p;
  const double ly = std::pow(lambda, 1.0 + space.mu());
  for (double& c : out.x) c *= lambda;
  for (double& c : out.y) c *= ly;
  return out;
}

double gauge_sphere_t(const GrushinSpace& space, double R, double s) {
  if (s >= R) return 0.0;
  const double mu = space.mu();
  // R^{2+2mu} - s^{2+2mu} written to keep relative accuracy when s is near R
  const double e = 2.0 + 2.0 * mu;
  const double diff = std::pow(R, e) * -std::expm1(e * std::log(s / R));
  return std::sqrt(std::max(diff, 0.0)) / (1.0 + mu);
}

double radial_gradient_norm(const GrushinSpace& space, const RadialGradient& g, double s) {
  return std::hypot(g.ds, std::pow(s, space.mu()) * g.dt);
}

std::optional<std::vector<double>> TrialField::partials(const Point&) const { return std::nullopt; }

std::optional<ext_real> TrialField::value_ext(const ExtPoint&) const { return std::nullopt; }

double TrialField::radial_value(double s, double t) const {
  require(bi_radial(), ErrorKind::invalid_argument, "radial_value on a field that is not bi-radial");
  Point p = Point::origin(space());
  p.x[0] = s;
  p.y[0] = t;
  return value(p);
}

RadialGradient TrialField::radial_gradient(double s, double t) const {
  require(bi_radial(), ErrorKind::invalid_argument, "radial_gradient on a field that is not bi-radial");
  Point p = Point::origin(space());
  p.x[0] = s;
  p.y[0] = t;
  auto g = partials(p);
  if (!g) g = fd_partials(*this, p);
  return {(*g)[0], (*g)[space().d()]};
}

double TrialField::gauge_value(double) const {
  fail(ErrorKind::invalid_argument, "gauge_value on a field that is not gauge-radial");
}

double TrialField::gauge_derivative(double) const {
  fail(ErrorKind::invalid_argument, "gauge_derivative on a field that is not gauge-radial");
}

namespace {

double& coord(Point& p, int i, int d) { return i < d ? p.x[i] : p.y[i - d]; }

void require_finite(const std::vector<double>& v, const char* what) {
  for (double c : v) require(std::isfinite(c), ErrorKind::invalid_argument, std::string(what) + ": non-finite derivative");
}

}  // namespace

std::vector<double> fd_partials(const TrialField& u, const Point& p, const FdOptions& opts) {
  const GrushinSpace& space = u.space();
  check_dims(space, p);
  const int d = space.d();
  const int n = space.dim();
  const double mu = space.mu();
  const double s = norm(p.x);
  const double r = rho(space, p);
  // local length scales of the gauge in each block; steps never exceed 1/64 of them
  const double x_scale = s > 0.0 ? s : kInfinity;
  const double y_scale = r > 0.0 ? std::pow(r, 1.0 + mu) / (1.0 + mu) : kInfinity;

  std::vector<double> out(n);
  Point q = p;
  for (int i = 0; i < n; ++i) {
    const double c = coord(q, i, d);
    double h = opts.base_step * std::max(1.0, std::fabs(c));
    h = std::min(h, (i < d ? x_scale : y_scale) / 64.0);
    auto central = [&](double step) {
      coord(q, i, d) = c + step;
      const double fp = u.value(q);
      coord(q, i, d) = c - step;
      const double fm = u.value(q);
      coord(q, i, d) = c;
      return (fp - fm) / (2.0 * step);
    };
    const double coarse = central(h);
    const double fine = central(0.5 * h);
    out[i] = (4.0 * fine - coarse) / 3.0;
  }
  require_finite(out, "fd_partials");
  return out;
}

std::vector<double> grushin_gradient(const GrushinSpace& space, const TrialField& u, const Point& p,
                                     const FdOptions& opts) {
  check_dims(space, p);
  require(u.space() == space, ErrorKind::dimension_mismatch, "grushin_gradient: field lives on another space");
  std::optional<std::vector<double>> g;
  if (!opts.force_fd) g = u.partials(p);
  if (!g) {
    require(norm(p.x) >= opts.min_abs_x, ErrorKind::invalid_argument,
            "grushin_gradient: finite differences need |x| >= " + num(opts.min_abs_x));
    g = fd_partials(u, p, opts);
  }
  require_finite(*g, "grushin_gradient");
  const double xm = std::pow(norm(p.x), space.mu());
  for (int j = space.d(); j < space.dim(); ++j) (*g)[j] *= xm;
  return *g;
}

namespace {

template <class Real, class Eval>
Real second_difference_sum(const GrushinSpace& space, const Point& p, double hx, double hy, Eval&& eval) {
  // sum of x second differences plus |x|^{2mu}-weighted y second differences, returned in Real
  const int d = space.d();
  const int n = space.dim();
  std::vector<Real> x(p.x.begin(), p.x.end()), y(p.y.begin(), p.y.end());
  const Real f0 = eval(x, y);
  Real lap_x = 0, lap_y = 0;
  const Real Hx = hx, Hy = hy;
  for (int i = 0; i < n; ++i) {
    auto& c = i < d ? x[i] : y[i - d];
    const Real h = i < d ? Hx : Hy;
    const Real saved = c;
    c = saved + h;
    const Real fp = eval(x, y);
    c = saved - h;
    const Real fm = eval(x, y);
    c = saved;
    const Real dd = (fp - 2 * f0 + fm) / (h * h);
    (i < d ? lap_x : lap_y) += dd;
  }
  using std::pow;
  Real s2 = 0;
  for (const auto& c : x) s2 += c * c;
  const Real weight = pow(s2, Real(space.mu()));  // |x|^{2mu}
  return lap_x + weight * lap_y;
}

}  // namespace

double fd_grushin_laplacian(const GrushinSpace& space, const TrialField& u, const Point& p, double step, int levels) {
  check_dims(space, p);
  require(step > 0.0 && std::isfinite(step), ErrorKind::invalid_argument, "fd_grushin_laplacian: step must be positive");
  require(levels >= 1 && levels <= 4, ErrorKind::invalid_argument, "fd_grushin_laplacian: levels must be in [1, 4]");
  const double s = norm(p.x);
  if (s < 10.0 * step) {
    std::ostringstream os;
    os << "fd_grushin_laplacian: |x| = " << s << " is closer than 10*step = " << 10.0 * step << " to {x=0}";
    fail(ErrorKind::invalid_argument, os.str());
  }
  const double xm = std::pow(s, space.mu());

  ExtPoint probe{std::vector<ext_real>(p.x.begin(), p.x.end()), std::vector<ext_real>(p.y.begin(), p.y.end())};
  const bool extended = u.value_ext(probe).has_value();

  std::vector<ext_real> table;
  double h = step;
  for (int l = 0; l < levels; ++l, h *= 0.5) {
    if (extended) {
      table.push_back(second_difference_sum<ext_real>(space, p, h, h * xm, [&](const auto& x, const auto& y) {
        return *u.value_ext(ExtPoint{x, y});
      }));
    } else {
      const double v = second_difference_sum<double>(space, p, h, h * xm, [&](const auto& x, const auto& y) {
        return u.value(Point{x, y});
      });
      table.push_back(ext_real(v));
    }
  }
  // Richardson: error expansion in even powers of h
  ext_real factor = 4;
  for (int col = 1; col < levels; ++col, factor *= 4) {
    for (int l = levels - 1; l >= col; --l) table[l] = (factor * table[l] - table[l - 1]) / (factor - 1);
  }
  const double out = static_cast<double>(table[levels - 1]);
  require(std::isfinite(out), ErrorKind::invalid_argument, "fd_grushin_laplacian: non-finite value");
  return out;
}

}  // namespace grushin
