#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>

#include <vector>

namespace grushin {

// 113-bit mantissa; used where finite differences need more than double can give
using ext_real = boost::multiprecision::cpp_bin_float_quad;

class GrushinSpace {
 public:
  GrushinSpace(int d, int k, double mu);

  int d() const noexcept { return d_; }
  int k() const noexcept { return k_; }
  double mu() const noexcept { return mu_; }
  // homogeneous dimension, recomputed on every call
  double Q() const noexcept { return d_ + (1.0 + mu_) * k_; }
  int dim() const noexcept { return d_ + k_; }

  friend bool operator==(const GrushinSpace&, const GrushinSpace&) = default;

 private:
  int d_;
  int k_;
  double mu_;
};

struct Point {
  std::vector<double> x;
  std::vector<double> y;

  static Point origin(const GrushinSpace& space);
};

struct ExtPoint {
  std::vector<ext_real> x;
  std::vector<ext_real> y;
};

void check_dims(const GrushinSpace& space, const Point& p);

double norm(const std::vector<double>& v);

// gauge of the point
double rho(const GrushinSpace& space, const Point& p);
// gauge from the block norms s = |x|, t = |y|
double rho_radial(const GrushinSpace& space, double s, double t);
ext_real rho_ext(const GrushinSpace& space, const ExtPoint& p);

Point dilate(const GrushinSpace& space, double lambda, const Point& p);

// t-extent of the gauge sphere of radius R above x-norm s (0 when s >= R)
double gauge_sphere_t(const GrushinSpace& space, double R, double s);

}  // namespace grushin
