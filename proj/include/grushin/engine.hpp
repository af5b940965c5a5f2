#pragma once

#include "grushin/fields.hpp"
#include "grushin/params.hpp"
#include "grushin/quadrature.hpp"
#include "grushin/trial_field.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace grushin {

struct SobolevParams {
  double p = 0;
};

enum class InequalityKind { hardy, whs, ckn, sobolev };

const char* to_string(InequalityKind k) noexcept;

struct InequalitySpec {
  GrushinSpace space;
  std::variant<HardyParams, WhsParams, CknParams, SobolevParams> params;

  InequalityKind kind() const noexcept;
  const CknParams& ckn() const;
  const HardyParams& hardy() const;
  const WhsParams& whs() const;
  const SobolevParams& sobolev() const;
};

// Admissibility predicates of the inequality (the full CKN list for ckn; p, s and
// alpha ranges for the others). verdict false blocks evaluation unless forced.
AdmissibilityReport check_spec(const InequalitySpec& spec, double tol = kDefaultAdmissibilityTol);

// One integral entering an inequality, with both routes when cross-checked.
struct TermReport {
  std::string name;  // "lhs", "gradient", "q_term"
  std::string integrand;
  double value = 0;
  double error_estimate = 0;
  std::int64_t n_evals = 0;
  std::string route;
  std::optional<std::uint64_t> seed;
  std::optional<double> cross_value;
  std::optional<double> cross_error;
  std::string cross_route;
  std::optional<bool> routes_agree;  // |primary - cross| <= sum of the estimates
};

struct InequalityReport {
  InequalityKind kind = InequalityKind::hardy;
  double lhs = 0;
  double rhs_grad_factor = 0;
  double rhs_q_factor = 1;
  double rhs = 0;
  double ratio = 0;
  double a = 1;  // interpolation power used to combine the two rhs factors
  std::optional<double> constant;
  std::optional<bool> satisfied_at_constant;  // lhs <= C rhs (1 + 3 tol)
  bool violation_asserted = false;            // lhs > C rhs (1 + 10 tol)
  std::string constant_note;
  std::vector<TermReport> terms;
  bool admissible = true;
  bool forced = false;
  double tol = 0;
  std::string field;
};

struct EvalOptions {
  double tol = 1e-8;
  bool cross_check = true;
  bool force = false;  // evaluate tuples that fail their admissibility check
  QuadratureOptions quad;
  // fields that are not bi-radial go through plain Monte Carlo
  std::int64_t mc_samples = 1'000'000;
  std::uint64_t seed = 0;
};

// Integrands of the inequality for field u, in the order lhs, gradient, q_term
// (q_term only for ckn with a < 1).
std::vector<WeightedIntegrand> inequality_integrands(const InequalitySpec& spec, const FieldPtr& u);

// Checks every integrand of the spec against u's support and origin behaviour;
// returns an empty string when all are finite, else the first offending term.
std::string integrability_issue(const InequalitySpec& spec, const FieldPtr& u);

InequalityReport evaluate(const InequalitySpec& spec, const FieldPtr& u, const EvalOptions& opts = {});

// Single integral with the two-route cross-check used by evaluate.
TermReport integrate_term(const GrushinSpace& space, const std::string& name, const WeightedIntegrand& g,
                          const EvalOptions& opts);

// ---------------------------------------------------------------- experiments

struct ExponentFit {
  std::string name;
  double fitted = 0;
  double predicted = 0;
  double r_squared = 0;
  double tolerance = 0;
  bool pass = false;
  bool inconclusive = false;  // R^2 below threshold
};

struct ScalingReport {
  std::string experiment;                 // "scaling", "translation", "log_family"
  std::string abscissa;                   // "lambda" or "log(1/eps)"
  std::vector<double> grid;               // lambda or eps values as given
  std::vector<std::vector<double>> integrals;  // [term][grid point]
  std::vector<std::string> term_names;
  std::vector<double> ratios;             // ratio per grid point (scaling, log family)
  std::vector<ExponentFit> fits;          // per integral, then the ratio where applicable
  bool pass = false;
  bool inconclusive = false;
  std::string verdict;
  std::vector<std::string> notes;
  // translation: growth per unit norm power of each side
  std::optional<double> lhs_rate, rhs_rate, diagnostic_rhs_rate;
  std::optional<bool> contradiction, diagnostic_contradiction;
  // log family
  std::optional<bool> slow_convergence;
  std::optional<bool> forced_inequality;  // 1 + 1/r <= a(1 + 1/p) + (1 - a)(1 + 1/q)
  double tol = 0;
  std::int64_t n_evals = 0;
};

inline constexpr double kMinFitRSquared = 0.999;
inline constexpr double kScalingExponentTol = 1e-3;

ScalingReport scaling_experiment(const InequalitySpec& spec, const FieldPtr& u, const std::vector<double>& lambdas,
                                 const EvalOptions& opts = {});

ScalingReport translation_experiment(const InequalitySpec& spec, const FieldPtr& u, const std::vector<double>& x0,
                                     const std::vector<double>& y0, const std::vector<double>& lambdas,
                                     const EvalOptions& opts = {});

inline constexpr double kLogExponentTol = 0.2;

ScalingReport log_family_experiment(const InequalitySpec& spec, const std::vector<double>& eps_list,
                                    const EvalOptions& opts = {});

// ---------------------------------------------------------------- sharp search

enum class SearchMode { grid, golden, nelder_mead };

const char* to_string(SearchMode m) noexcept;

struct SearchConfig {
  SearchMode mode = SearchMode::grid;
  std::vector<double> eps_shift_grid{0.4, 0.2, 0.1, 0.05};
  double lo = 0.02, hi = 0.5;          // golden: eps_shift bracket
  double cut_ratio = kDefaultCutRatio;  // fixed for grid and golden
  int max_iterations = 60;
  double x_tol = 1e-3;                 // golden and simplex: stop when the bracket is this small
  std::uint64_t seed = 0;              // simplex start perturbation
};

struct SearchStep {
  int iteration = 0;
  double eps_shift = 0;
  double cut_ratio = 0;
  double ratio = 0;
  double best_so_far = 0;
};

struct SearchReport {
  SearchMode mode = SearchMode::grid;
  double best_ratio = 0;
  double best_eps_shift = 0;
  double best_cut_ratio = 0;
  std::optional<double> target;
  std::optional<double> fraction_of_target;
  bool within_bound = true;  // every ratio <= target (1 + 3 tol)
  bool stabilized = true;
  std::vector<SearchStep> trace;
  std::uint64_t seed = 0;
  double tol = 0;
};

SearchReport sharp_search(const InequalitySpec& spec, const SearchConfig& cfg, const EvalOptions& opts = {});

}  // namespace grushin
