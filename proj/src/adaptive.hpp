#pragma once

// One-dimensional adaptive Gauss-Legendre integration with dyadic grading toward
// singular endpoints. Internal to the quadrature module.

#include "grushin/gauss_legendre.hpp"
#include "grushin/quadrature.hpp"

#include <cstdint>
#include <functional>
#include <vector>

namespace grushin::detail {

// integrand value plus the absolute uncertainty it carries (nonzero for nested integrals)
struct Sample {
  double value = 0;
  double error = 0;
};

using Integrand1D = std::function<Sample(double)>;

struct Budget {
  std::int64_t used = 0;
  std::int64_t limit = 0;
  bool exhausted() const { return used >= limit; }
};

struct LineResult {
  double value = 0;
  double error = 0;
  QuadStatus status = QuadStatus::converged;
};

void merge(LineResult& into, const LineResult& part);

// global adaptive bisection on [a, b]; cell error = |coarse - (left + right)| + carried error
LineResult adaptive(const Integrand1D& f, double a, double b, double rel_tol, const GaussLegendreRule& rule,
                    Budget& budget, double abs_tol = 0.0);

enum class Grade { none, left, right };

// Dyadic shells toward the graded endpoint. Once successive shell ratios settle,
// the remainder is summed as a geometric tail, but only for shells closer to the
// endpoint than `extrapolate_within` (below that scale the integrand is known to
// behave like a power). Ratios settling at >= 1 report divergence.
LineResult graded(const Integrand1D& f, double a, double b, Grade grade, double rel_tol, double extrapolate_within,
                  const GaussLegendreRule& rule, Budget& budget);

// splits [a, b] at the breakpoints inside it and integrates each piece
struct PiecePlan {
  bool grade_first_left = false;   // first piece graded toward a
  bool grade_pieces_right = false; // every piece graded toward its right end (sqrt-type endpoints)
  double extrapolate_within = 0;
};

LineResult integrate_pieces(const Integrand1D& f, double a, double b, std::vector<double> breakpoints,
                            const PiecePlan& plan, double rel_tol, const GaussLegendreRule& rule, Budget& budget);

}  // namespace grushin::detail
