#include "grushin/report_json.hpp"

#include "grushin/format.hpp"

#include <cmath>

namespace grushin {

using nlohmann::json;

namespace {

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

template <class T>
json optional(const std::optional<T>& v) {
  if (!v) return nullptr;
  if constexpr (std::is_floating_point_v<T>) return number(*v);
  else return *v;
}

json numbers(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(number(x));
  return a;
}

std::string cell(double v) { return std::isfinite(v) ? num(v) : (std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf")); }
std::string cell(bool b) { return b ? "true" : "false"; }
template <class T>
std::string cell(const std::optional<T>& v) {
  return v ? cell(*v) : "";
}

}  // namespace

json to_json(const GrushinSpace& s) { return {{"d", s.d()}, {"k", s.k()}, {"mu", s.mu()}, {"Q", s.Q()}}; }

json to_json(const InequalitySpec& s) {
  json j{{"kind", to_string(s.kind())}, {"space", to_json(s.space)}};
  switch (s.kind()) {
    case InequalityKind::hardy: j["p"] = s.hardy().p; j["alpha"] = s.hardy().alpha; break;
    case InequalityKind::whs: j["p"] = s.whs().p; j["s"] = s.whs().s; j["alpha"] = s.whs().alpha; break;
    case InequalityKind::sobolev: j["p"] = s.sobolev().p; break;
    case InequalityKind::ckn: {
      const auto& c = s.ckn();
      j.update({{"p", c.p}, {"q", c.q}, {"r", c.r}, {"a", c.a}, {"alpha", c.alpha}, {"beta", c.beta}, {"sigma", c.sigma},
                {"gamma", c.gamma()}});
      break;
    }
  }
  return j;
}

json to_json(const AdmissibilityReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    json e{{"name", c.name}, {"residual", number(c.residual)}, {"pass", c.pass}};
    if (c.ignored) e["ignored"] = true;
    if (!c.note.empty()) e["note"] = c.note;
    checks.push_back(e);
  }
  return {{"verdict", r.verdict},           {"checks", checks},
          {"balance_residual", number(r.balance_residual)}, {"trigger_residual", number(r.trigger_residual)},
          {"trigger_active", r.trigger_active}, {"tol", r.tol},
          {"exact", r.exact},               {"failing", r.failing()}};
}

json to_json(const TermReport& t) {
  json j{{"name", t.name},       {"integrand", t.integrand}, {"value", number(t.value)},
         {"error_estimate", number(t.error_estimate)}, {"n_evals", t.n_evals}, {"route", t.route}};
  if (t.seed) j["seed"] = *t.seed;
  if (!t.cross_route.empty()) {
    j["cross_check"] = {{"route", t.cross_route},
                        {"value", optional(t.cross_value)},
                        {"error_estimate", optional(t.cross_error)},
                        {"routes_agree", optional(t.routes_agree)}};
  }
  return j;
}

json to_json(const InequalityReport& r) {
  json terms = json::array();
  for (const auto& t : r.terms) terms.push_back(to_json(t));
  json j{{"kind", to_string(r.kind)},
         {"lhs", number(r.lhs)},
         {"rhs_grad_factor", number(r.rhs_grad_factor)},
         {"rhs_q_factor", number(r.rhs_q_factor)},
         {"rhs", number(r.rhs)},
         {"ratio", number(r.ratio)},
         {"a", r.a},
         {"constant", optional(r.constant)},
         {"satisfied_at_constant", optional(r.satisfied_at_constant)},
         {"violation_asserted", r.violation_asserted},
         {"terms", terms},
         {"admissible", r.admissible},
         {"forced", r.forced},
         {"tol", r.tol},
         {"field", r.field}};
  if (!r.constant_note.empty()) j["constant_note"] = r.constant_note;
  return j;
}

json to_json(const ScalingReport& r) {
  json fits = json::array();
  for (const auto& f : r.fits)
    fits.push_back({{"name", f.name},
                    {"fitted", number(f.fitted)},
                    {"predicted", number(f.predicted)},
                    {"r_squared", number(f.r_squared)},
                    {"tolerance", f.tolerance},
                    {"pass", f.pass},
                    {"inconclusive", f.inconclusive}});
  json integrals = json::object();
  for (size_t i = 0; i < r.term_names.size(); ++i) integrals[r.term_names[i]] = numbers(r.integrals[i]);
  json j{{"experiment", r.experiment}, {"abscissa", r.abscissa}, {"grid", numbers(r.grid)},
         {"integrals", integrals},     {"fits", fits},           {"pass", r.pass},
         {"inconclusive", r.inconclusive}, {"verdict", r.verdict}, {"notes", r.notes},
         {"tol", r.tol},               {"n_evals", r.n_evals}};
  if (!r.ratios.empty()) j["ratios"] = numbers(r.ratios);
  if (r.lhs_rate) j["lhs_rate"] = number(*r.lhs_rate);
  if (r.rhs_rate) j["rhs_rate"] = number(*r.rhs_rate);
  if (r.diagnostic_rhs_rate) j["diagnostic_rhs_rate"] = number(*r.diagnostic_rhs_rate);
  if (r.contradiction) j["contradiction"] = *r.contradiction;
  if (r.diagnostic_contradiction) j["diagnostic_contradiction"] = *r.diagnostic_contradiction;
  if (r.slow_convergence) j["slow_convergence"] = *r.slow_convergence;
  if (r.forced_inequality) j["forced_inequality"] = *r.forced_inequality;
  return j;
}

json to_json(const SearchReport& r) {
  json trace = json::array();
  for (const auto& s : r.trace)
    trace.push_back({{"iteration", s.iteration},
                     {"eps_shift", number(s.eps_shift)},
                     {"cut_ratio", number(s.cut_ratio)},
                     {"ratio", number(s.ratio)},
                     {"best_so_far", number(s.best_so_far)}});
  return {{"mode", to_string(r.mode)},
          {"best_ratio", number(r.best_ratio)},
          {"best_eps_shift", number(r.best_eps_shift)},
          {"best_cut_ratio", number(r.best_cut_ratio)},
          {"target", optional(r.target)},
          {"fraction_of_target", optional(r.fraction_of_target)},
          {"within_bound", r.within_bound},
          {"stabilized", r.stabilized},
          {"trace", trace},
          {"seed", r.seed},
          {"tol", r.tol}};
}

std::string CsvTable::str() const {
  auto quote = [](const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) return s;
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"') q += '"';
      q += ch;
    }
    return q + "\"";
  };
  std::string out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) out += (i ? "," : "") + quote(cells[i]);
    out += "\r\n";
  };
  line(header);
  for (const auto& r : rows) line(r);
  return out;
}

CsvTable csv_admissibility(const AdmissibilityReport& r) {
  CsvTable t{{"predicate", "residual", "pass", "ignored"}, {}};
  for (const auto& c : r.checks) t.rows.push_back({c.name, cell(c.residual), cell(c.pass), cell(c.ignored)});
  return t;
}

CsvTable csv_inequality(const InequalityReport& r) {
  CsvTable t{{"kind", "lhs", "rhs_grad_factor", "rhs_q_factor", "rhs", "ratio", "constant", "satisfied_at_constant"}, {}};
  t.rows.push_back({to_string(r.kind), cell(r.lhs), cell(r.rhs_grad_factor), cell(r.rhs_q_factor), cell(r.rhs),
                    cell(r.ratio), cell(r.constant), cell(r.satisfied_at_constant)});
  return t;
}

CsvTable csv_scaling(const ScalingReport& r) {
  // one row per grid point; fitted and predicted exponents repeat on every row
  CsvTable t;
  t.header.push_back(r.abscissa == "lambda" ? "lambda" : "eps");
  for (const auto& n : r.term_names) t.header.push_back(n);
  if (!r.ratios.empty()) t.header.push_back("ratio");
  for (const auto& f : r.fits) {
    t.header.push_back(f.name + "_exponent_fit");
    t.header.push_back(f.name + "_exponent_predicted");
  }
  for (size_t i = 0; i < r.grid.size(); ++i) {
    std::vector<std::string> row{cell(r.grid[i])};
    for (const auto& series : r.integrals) row.push_back(cell(series[i]));
    if (!r.ratios.empty()) row.push_back(cell(r.ratios[i]));
    for (const auto& f : r.fits) {
      row.push_back(cell(f.fitted));
      row.push_back(cell(f.predicted));
    }
    t.rows.push_back(std::move(row));
  }
  return t;
}

CsvTable csv_search(const SearchReport& r) {
  CsvTable t{{"iteration", "eps_shift", "cut_ratio", "ratio", "best_so_far", "fraction_of_target"}, {}};
  for (const auto& s : r.trace)
    t.rows.push_back({std::to_string(s.iteration), cell(s.eps_shift), cell(s.cut_ratio), cell(s.ratio), cell(s.best_so_far),
                      r.target ? cell(s.best_so_far / *r.target) : ""});
  return t;
}

}  // namespace grushin
