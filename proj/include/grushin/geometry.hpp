#pragma once

#include "grushin/space.hpp"
#include "grushin/trial_field.hpp"

#include <vector>

namespace grushin {

struct FdOptions {
  double base_step = 1e-4;    // scaled by max(1, |coordinate|)
  double min_abs_x = 1e-3;    // derivative checks refuse points closer to {x = 0}
  bool force_fd = false;      // ignore analytic partials
};

// finite-difference partials: two step sizes and one Richardson step
std::vector<double> fd_partials(const TrialField& u, const Point& p, const FdOptions& opts = {});

std::vector<double> grushin_gradient(const GrushinSpace& space, const TrialField& u, const Point& p,
                                     const FdOptions& opts = {});

// Central-difference G_mu u = Lap_x u + |x|^{2mu} Lap_y u with step h in x and
// h|x|^mu in y, extrapolated over `levels` halvings of h. Evaluates u in
// extended precision when the field supports it.
double fd_grushin_laplacian(const GrushinSpace& space, const TrialField& u, const Point& p, double step,
                            int levels = 3);

}  // namespace grushin
