#include "grushin/engine.hpp"

#include "grushin/error.hpp"
#include "grushin/fields.hpp"
#include "grushin/format.hpp"
#include "grushin/rng.hpp"

#include <algorithm>
#include <array>
#include <cmath>

namespace grushin {

const char* to_string(SearchMode m) noexcept {
  switch (m) {
    case SearchMode::grid: return "grid";
    case SearchMode::golden: return "golden";
    case SearchMode::nelder_mead: return "nelder_mead";
  }
  return "?";
}

namespace {

constexpr double kMinCutRatio = 10.0;
constexpr double kMaxCutRatio = 1e6;

class Objective {
 public:
  Objective(const InequalitySpec& spec, const EvalOptions& opts, SearchReport& rep) : spec_(spec), opts_(opts), rep_(rep) {}

  double operator()(double eps_shift, double cut_ratio) {
    const auto& h = spec_.hardy();
    const FieldPtr u = make_hardy_extremal(spec_.space, h.p, h.alpha, eps_shift, cut_ratio);
    const InequalityReport r = evaluate(spec_, u, opts_);
    SearchStep step;
    step.iteration = static_cast<int>(rep_.trace.size());
    step.eps_shift = eps_shift;
    step.cut_ratio = cut_ratio;
    step.ratio = r.ratio;
    if (rep_.trace.empty() || r.ratio > rep_.best_ratio) {
      rep_.best_ratio = r.ratio;
      rep_.best_eps_shift = eps_shift;
      rep_.best_cut_ratio = cut_ratio;
    }
    step.best_so_far = rep_.best_ratio;
    if (r.satisfied_at_constant == false) rep_.within_bound = false;
    rep_.trace.push_back(step);
    return r.ratio;
  }

 private:
  const InequalitySpec& spec_;
  const EvalOptions& opts_;
  SearchReport& rep_;
};

void golden(Objective& f, const SearchConfig& cfg, SearchReport& rep) {
  require(cfg.lo > 0.0 && cfg.hi > cfg.lo, ErrorKind::invalid_argument, "sharp search: need 0 < lo < hi");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = cfg.lo, b = cfg.hi;
  double x1 = b - inv_phi * (b - a), x2 = a + inv_phi * (b - a);
  double f1 = f(x1, cfg.cut_ratio), f2 = f(x2, cfg.cut_ratio);
  int evals = 2;
  while (b - a > cfg.x_tol && evals < cfg.max_iterations) {
    if (f1 >= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - inv_phi * (b - a);
      f1 = f(x1, cfg.cut_ratio);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + inv_phi * (b - a);
      f2 = f(x2, cfg.cut_ratio);
    }
    ++evals;
  }
  rep.stabilized = b - a <= cfg.x_tol;
}

// Simplex over (log eps_shift, log cut_ratio), maximising the ratio.
void nelder_mead(Objective& f, const SearchConfig& cfg, SearchReport& rep) {
  require(cfg.lo > 0.0 && cfg.hi > cfg.lo, ErrorKind::invalid_argument, "sharp search: need 0 < lo < hi");
  using Vec = std::array<double, 2>;
  const Vec lower{std::log(cfg.lo), std::log(kMinCutRatio)};
  const Vec upper{std::log(cfg.hi), std::log(kMaxCutRatio)};
  auto clamp = [&](Vec v) {
    for (int i = 0; i < 2; ++i) v[i] = std::clamp(v[i], lower[i], upper[i]);
    return v;
  };
  auto value = [&](const Vec& v) { return -f(std::exp(v[0]), std::exp(v[1])); };

  Rng rng(cfg.seed);
  const Vec start = clamp({0.5 * (lower[0] + upper[0]), std::log(cfg.cut_ratio)});
  std::array<Vec, 3> simplex{start, start, start};
  for (int i = 0; i < 2; ++i) {
    const double step = 0.25 * (upper[i] - lower[i]) * (0.75 + 0.5 * rng.uniform());
    simplex[i + 1][i] = start[i] + (start[i] + step <= upper[i] ? step : -step);
  }
  std::array<double, 3> fv{};
  for (int i = 0; i < 3; ++i) fv[i] = value(simplex[i]);
  int evals = 3;
  rep.stabilized = false;

  while (evals < cfg.max_iterations) {
    std::array<int, 3> idx{0, 1, 2};
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return fv[a] < fv[b]; });
    const int best = idx[0], mid = idx[1], worst = idx[2];
    double size = 0;
    for (int i : {mid, worst})
      for (int j = 0; j < 2; ++j) size = std::max(size, std::fabs(simplex[i][j] - simplex[best][j]));
    if (size <= cfg.x_tol) {
      rep.stabilized = true;
      break;
    }
    Vec centroid{};
    for (int j = 0; j < 2; ++j) centroid[j] = 0.5 * (simplex[best][j] + simplex[mid][j]);
    auto along = [&](double t) {
      Vec v;
      for (int j = 0; j < 2; ++j) v[j] = centroid[j] + t * (simplex[worst][j] - centroid[j]);
      return clamp(v);
    };
    const Vec xr = along(-1.0);
    const double fr = value(xr);
    ++evals;
    if (fr < fv[best]) {
      const Vec xe = along(-2.0);
      const double fe = value(xe);
      ++evals;
      if (fe < fr) simplex[worst] = xe, fv[worst] = fe;
      else simplex[worst] = xr, fv[worst] = fr;
    } else if (fr < fv[mid]) {
      simplex[worst] = xr;
      fv[worst] = fr;
    } else {
      const Vec xc = along(fr < fv[worst] ? -0.5 : 0.5);
      const double fc = value(xc);
      ++evals;
      if (fc < std::min(fr, fv[worst])) {
        simplex[worst] = xc;
        fv[worst] = fc;
      } else {
        // shrink toward the best vertex
        for (int i : {mid, worst}) {
          for (int j = 0; j < 2; ++j) simplex[i][j] = simplex[best][j] + 0.5 * (simplex[i][j] - simplex[best][j]);
          fv[i] = value(simplex[i]);
          ++evals;
        }
      }
    }
  }
}

}  // namespace

SearchReport sharp_search(const InequalitySpec& spec, const SearchConfig& cfg, const EvalOptions& opts) {
  const HardyParams& h = spec.hardy();
  SearchReport rep;
  rep.mode = cfg.mode;
  rep.seed = cfg.seed;
  rep.tol = opts.tol;
  rep.target = hardy_constant(spec.space, h);  // throws inapplicable in the gap
  require(cfg.max_iterations >= 3, ErrorKind::invalid_argument, "sharp search: max_iterations must be at least 3");
  require(cfg.cut_ratio >= kMinCutRatio && cfg.cut_ratio <= kMaxCutRatio, ErrorKind::invalid_argument,
          "sharp search: cut_ratio must lie in [" + num(kMinCutRatio) + ", " + num(kMaxCutRatio) + "]");
  Objective f(spec, opts, rep);
  switch (cfg.mode) {
    case SearchMode::grid:
      require(!cfg.eps_shift_grid.empty(), ErrorKind::invalid_argument, "sharp search: empty eps_shift grid");
      for (double e : cfg.eps_shift_grid) f(e, cfg.cut_ratio);
      break;
    case SearchMode::golden: golden(f, cfg, rep); break;
    case SearchMode::nelder_mead: nelder_mead(f, cfg, rep); break;
  }
  rep.fraction_of_target = rep.best_ratio / *rep.target;
  return rep;
}

}  // namespace grushin
