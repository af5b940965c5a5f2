#include "grushin/commands.hpp"

#include "grushin/config.hpp"
#include "grushin/engine.hpp"
#include "grushin/format.hpp"
#include "grushin/report_json.hpp"

#include <chrono>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <ostream>

namespace grushin {

using nlohmann::json;

int exit_code_for(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::config:
    case ErrorKind::invalid_argument:
    case ErrorKind::dimension_mismatch: return kExitUsage;
    case ErrorKind::inadmissible:
    case ErrorKind::inapplicable:
    case ErrorKind::integrability:
    case ErrorKind::divergent:
    case ErrorKind::degenerate: return kExitRefused;
    case ErrorKind::not_converged: return kExitNumerical;
  }
  return kExitUsage;
}

std::string csv_path_for(const std::string& json_path) {
  std::filesystem::path p(json_path);
  p.replace_extension(".csv");
  return p.string();
}

namespace {

std::string utc_now() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

struct Outcome {
  json report;
  CsvTable csv;
  int code = kExitOk;
};

const InequalitySpec& need_inequality(const ExperimentConfig& cfg) {
  if (!cfg.inequality) fail(ErrorKind::config, "config lacks /inequality");
  return *cfg.inequality;
}

FieldPtr need_field(const ExperimentConfig& cfg) {
  if (!cfg.field) fail(ErrorKind::config, "config lacks /field");
  return build_field(*cfg.space, *cfg.field);
}

void need_ckn(const InequalitySpec& spec, const std::string& command) {
  if (spec.kind() != InequalityKind::ckn)
    fail(ErrorKind::config, command + " needs a ckn inequality, got " + to_string(spec.kind()));
}

void print_fits(const ScalingReport& r, std::ostream& out) {
  for (const auto& f : r.fits)
    out << "  " << f.name << ": fitted " << num(f.fitted) << ", predicted " << num(f.predicted) << ", R^2 "
        << num(f.r_squared) << (f.pass ? "  [pass]" : f.inconclusive ? "  [inconclusive]" : "  [fail]") << "\n";
  out << r.verdict << "\n";
  for (const auto& n : r.notes) out << "  note: " << n << "\n";
}

Outcome cmd_validate(const ExperimentConfig& cfg, std::ostream& out) {
  const InequalitySpec& spec = need_inequality(cfg);
  const AdmissibilityReport adm = check_spec(spec);
  for (const auto& c : adm.checks)
    out << (c.ignored ? "  [skip] " : c.pass ? "  [pass] " : "  [FAIL] ") << c.name << "  residual " << num(c.residual)
        << (c.note.empty() ? "" : "  (" + c.note + ")") << "\n";
  out << (adm.verdict ? "admissible" : "not admissible") << "\n";
  return {json{{"inequality", to_json(spec)}, {"admissibility", to_json(adm)}}, csv_admissibility(adm),
          adm.verdict ? kExitOk : kExitRefused};
}

Outcome cmd_eval(const ExperimentConfig& cfg, const EvalOptions& eo, std::ostream& out) {
  const InequalitySpec& spec = need_inequality(cfg);
  const InequalityReport r = evaluate(spec, need_field(cfg), eo);
  out << "lhs " << num(r.lhs) << "\nrhs " << num(r.rhs) << "\nratio " << num(r.ratio) << "\n";
  if (r.constant)
    out << "constant " << num(*r.constant) << ", satisfied at constant: " << (*r.satisfied_at_constant ? "yes" : "no")
        << (r.violation_asserted ? " (violation beyond 10 tol)" : "") << "\n";
  for (const auto& t : r.terms)
    if (t.routes_agree == false) out << "  warning: " << t.name << " routes disagree\n";
  return {json{{"inequality", to_json(spec)}, {"evaluation", to_json(r)}}, csv_inequality(r), kExitOk};
}

Outcome cmd_scale(const ExperimentConfig& cfg, const EvalOptions& eo, std::ostream& out) {
  const InequalitySpec& spec = need_inequality(cfg);
  need_ckn(spec, "scale");
  const ScalingReport r = scaling_experiment(spec, need_field(cfg), cfg.lambdas, eo);
  print_fits(r, out);
  return {json{{"inequality", to_json(spec)}, {"scaling", to_json(r)}}, csv_scaling(r), kExitOk};
}

Outcome cmd_translate(const ExperimentConfig& cfg, const EvalOptions& eo, std::ostream& out) {
  const InequalitySpec& spec = need_inequality(cfg);
  need_ckn(spec, "translate");
  if (!cfg.x0) fail(ErrorKind::config, "config lacks /translation");
  const ScalingReport r = translation_experiment(spec, need_field(cfg), *cfg.x0, *cfg.y0, cfg.lambdas, eo);
  print_fits(r, out);
  return {json{{"inequality", to_json(spec)}, {"translation", to_json(r)}}, csv_scaling(r), kExitOk};
}

Outcome cmd_logfam(const ExperimentConfig& cfg, const EvalOptions& eo, std::ostream& out) {
  const InequalitySpec& spec = need_inequality(cfg);
  need_ckn(spec, "logfam");
  const ScalingReport r = log_family_experiment(spec, cfg.eps, eo);
  print_fits(r, out);
  if (r.slow_convergence && *r.slow_convergence) out << "slow convergence: fits are unreliable on this grid\n";
  return {json{{"inequality", to_json(spec)}, {"log_family", to_json(r)}}, csv_scaling(r), kExitOk};
}

Outcome cmd_sharp(const ExperimentConfig& cfg, const EvalOptions& eo, std::ostream& out) {
  const InequalitySpec& spec = need_inequality(cfg);
  if (spec.kind() != InequalityKind::hardy) fail(ErrorKind::config, "sharp needs a hardy inequality");
  SearchConfig sc = cfg.search.value_or(SearchConfig{});
  sc.seed = eo.seed;
  const SearchReport r = sharp_search(spec, sc, eo);
  for (const auto& s : r.trace)
    out << "  eps_shift " << num(s.eps_shift) << "  cut_ratio " << num(s.cut_ratio) << "  ratio " << num(s.ratio) << "\n";
  out << "best ratio " << num(r.best_ratio) << " of target " << num(*r.target) << " (fraction "
      << num(*r.fraction_of_target) << ")\n";
  if (!r.within_bound) out << "warning: a ratio exceeded the constant beyond the 3 tol slack\n";
  return {json{{"inequality", to_json(spec)}, {"search", to_json(r)}}, csv_search(r),
          r.stabilized ? kExitOk : kExitNumerical};
}

bool write_file(const std::string& path, const std::string& text, std::ostream& err) {
  std::ofstream f(path, std::ios::binary);
  if (f) f << text;
  if (!f) {
    err << "error: cannot write " << path << "\n";
    return false;
  }
  return true;
}

}  // namespace

int run_command(const CommandOptions& opts, std::ostream& out, std::ostream& err) {
  const std::string started = utc_now();
  const auto t0 = std::chrono::steady_clock::now();
  ExperimentConfig cfg;
  try {
    cfg = load_config(opts.config_path);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return exit_code_for(e.kind());
  }
  EvalOptions eo = cfg.eval;
  if (opts.tol) eo.tol = *opts.tol;
  if (opts.seed) eo.seed = *opts.seed;
  eo.force = opts.force;
  if (!(eo.tol > 0.0 && eo.tol < 1.0)) {
    err << "error: --tol must lie in (0, 1)\n";
    return kExitUsage;
  }

  std::string json_path = opts.out.empty() ? cfg.output.json : opts.out;
  std::string csv_path = !opts.out.empty() ? csv_path_for(opts.out) : cfg.output.csv;
  if (csv_path.empty() && !json_path.empty()) csv_path = csv_path_for(json_path);

  Outcome result;
  json error = nullptr;
  try {
    if (opts.command == "validate") result = cmd_validate(cfg, out);
    else if (opts.command == "eval") result = cmd_eval(cfg, eo, out);
    else if (opts.command == "scale") result = cmd_scale(cfg, eo, out);
    else if (opts.command == "translate") result = cmd_translate(cfg, eo, out);
    else if (opts.command == "logfam") result = cmd_logfam(cfg, eo, out);
    else if (opts.command == "sharp") result = cmd_sharp(cfg, eo, out);
    else fail(ErrorKind::config, "unknown command \"" + opts.command + "\"");
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    result.code = exit_code_for(e.kind());
    error = {{"kind", to_string(e.kind())}, {"message", e.what()}};
  }

  if (!json_path.empty()) {
    json doc;
    doc["artifact"] = {{"name", "grushin"}, {"version", GRUSHIN_VERSION}};
    doc["command"] = opts.command;
    doc["config"] = cfg.echo;
    doc["settings"] = {{"tol", eo.tol},
                       {"seed", eo.seed},
                       {"force", eo.force},
                       {"cross_check", eo.cross_check},
                       {"quadrature_order", eo.quad.order},
                       {"max_evals", eo.quad.max_evals},
                       {"mc_samples", eo.mc_samples}};
    doc["report"] = result.report;
    doc["exit_code"] = result.code;
    doc["error"] = error;
    const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    // the only non-reproducible section
    doc["run"] = {{"started_utc", started}, {"finished_utc", utc_now()}, {"elapsed_seconds", elapsed}};
    if (!write_file(json_path, doc.dump(2) + "\n", err)) return kExitUsage;
  }
  if (!csv_path.empty() && error.is_null()) {
    if (!write_file(csv_path, result.csv.str(), err)) return kExitUsage;
  }
  return result.code;
}

}  // namespace grushin
