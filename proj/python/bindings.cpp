#include "grushin/config.hpp"
#include "grushin/engine.hpp"
#include "grushin/error.hpp"
#include "grushin/fields.hpp"
#include "grushin/format.hpp"
#include "grushin/geometry.hpp"
#include "grushin/lemmas.hpp"
#include "grushin/params.hpp"
#include "grushin/report_json.hpp"

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

namespace py = pybind11;
using namespace grushin;

namespace {

// reports cross the boundary as JSON text; the Python package decodes them
std::string dumps(const nlohmann::json& j) { return j.dump(); }

double need(const py::dict& d, const char* key) {
  if (!d.contains(key)) throw Error(ErrorKind::invalid_argument, std::string("missing parameter \"") + key + "\"");
  return d[key].cast<double>();
}

double maybe(const py::dict& d, const char* key, double fallback) { return d.contains(key) ? d[key].cast<double>() : fallback; }

InequalitySpec make_spec(const std::string& kind, const GrushinSpace& space, const py::dict& p) {
  if (kind == "hardy") return {space, HardyParams{need(p, "p"), maybe(p, "alpha", 0.0)}};
  if (kind == "whs") return {space, WhsParams{need(p, "p"), need(p, "s"), maybe(p, "alpha", 0.0)}};
  if (kind == "sobolev") return {space, SobolevParams{need(p, "p")}};
  if (kind == "ckn") {
    CknParams c;
    c.p = need(p, "p");
    c.r = need(p, "r");
    c.a = need(p, "a");
    c.alpha = need(p, "alpha");
    c.sigma = need(p, "sigma");
    c.q = c.a == 1.0 ? maybe(p, "q", c.p) : need(p, "q");
    c.beta = c.a == 1.0 ? maybe(p, "beta", c.sigma) : need(p, "beta");
    return {space, c};
  }
  throw Error(ErrorKind::invalid_argument, "unknown inequality kind \"" + kind + "\"");
}

EvalOptions eval_options(double tol, bool cross_check, bool force, std::uint64_t seed) {
  EvalOptions o;
  o.tol = tol;
  o.cross_check = cross_check;
  o.force = force;
  o.seed = seed;
  return o;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Grushin-space inequality probes (compiled core)";

  // message carries the error kind as a prefix, e.g. "inadmissible: ..."
  static PyObject* exc = py::exception<Error>(m, "GrushinError").release().ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      PyErr_SetString(exc, (std::string(to_string(e.kind())) + ": " + e.what()).c_str());
    }
  });

  py::class_<GrushinSpace>(m, "GrushinSpace")
      .def(py::init<int, int, double>(), py::arg("d"), py::arg("k"), py::arg("mu"))
      .def_property_readonly("d", &GrushinSpace::d)
      .def_property_readonly("k", &GrushinSpace::k)
      .def_property_readonly("mu", &GrushinSpace::mu)
      .def_property_readonly("Q", &GrushinSpace::Q)
      .def("__repr__", [](const GrushinSpace& s) {
        return "GrushinSpace(d=" + std::to_string(s.d()) + ", k=" + std::to_string(s.k()) + ", mu=" + num(s.mu()) + ")";
      });

  py::class_<TrialField, std::shared_ptr<TrialField>>(m, "TrialField")
      .def("value", [](const TrialField& f, std::vector<double> x, std::vector<double> y) { return f.value(Point{x, y}); })
      .def_property_readonly("support_radius", &TrialField::support_radius)
      .def_property_readonly("bi_radial", &TrialField::bi_radial)
      .def("describe", &TrialField::describe);

  auto as_field = [](FieldPtr p) { return std::const_pointer_cast<TrialField>(std::move(p)); };
  m.def("make_bump", [=](const GrushinSpace& s, double ri, double ro) { return as_field(make_bump(s, ri, ro)); },
        py::arg("space"), py::arg("r_inner") = 1.0, py::arg("r_outer") = 2.0);
  m.def("make_log_family", [=](const GrushinSpace& s, double eps, double gamma, double r) {
    return as_field(make_log_family(s, eps, gamma, r));
  });
  m.def("make_hardy_extremal",
        [=](const GrushinSpace& s, double p, double alpha, double shift, double cut) {
          return as_field(make_hardy_extremal(s, p, alpha, shift, cut));
        },
        py::arg("space"), py::arg("p"), py::arg("alpha"), py::arg("eps_shift"), py::arg("cut_ratio") = kDefaultCutRatio);
  m.def("dilate_field", [=](std::shared_ptr<TrialField> u, double lambda) { return as_field(dilate_field(u, lambda)); });
  m.def("scale_field", [=](std::shared_ptr<TrialField> u, double c) { return as_field(scale_field(u, c)); });

  m.def("rho", [](const GrushinSpace& s, std::vector<double> x, std::vector<double> y) { return rho(s, Point{x, y}); });
  m.def("dilate", [](const GrushinSpace& s, double lambda, std::vector<double> x, std::vector<double> y) {
    const Point p = dilate(s, lambda, Point{x, y});
    return py::make_tuple(p.x, p.y);
  });
  m.def("grushin_gradient", [](const GrushinSpace& s, std::shared_ptr<TrialField> u, std::vector<double> x,
                               std::vector<double> y) { return grushin_gradient(s, *u, Point{x, y}); });

  m.def("hardy_constant", [](const GrushinSpace& s, double p, double alpha) { return hardy_constant(s, HardyParams{p, alpha}); });
  m.def("p_star", &p_star);
  m.def("integrable", [](const GrushinSpace& s, double x_exp, double rho_exp, const std::string& region) {
    if (region != "near_origin" && region != "near_infinity")
      throw Error(ErrorKind::invalid_argument, "region must be near_origin or near_infinity");
    const auto v = integrable(s, x_exp, rho_exp, region == "near_origin" ? Region::near_origin : Region::near_infinity);
    return py::make_tuple(v.integrable, v.boundary);
  });
  m.def("_check_spec", [](const std::string& kind, const GrushinSpace& s, const py::dict& p, double tol) {
    return dumps(to_json(check_spec(make_spec(kind, s, p), tol)));
  });
  m.def("_evaluate", [](const std::string& kind, const GrushinSpace& s, const py::dict& p, std::shared_ptr<TrialField> u,
                        double tol, bool cross_check, bool force) {
    return dumps(to_json(evaluate(make_spec(kind, s, p), u, eval_options(tol, cross_check, force, 0))));
  });
  m.def("_scaling_experiment", [](const GrushinSpace& s, const py::dict& p, std::shared_ptr<TrialField> u,
                                  std::vector<double> lambdas, double tol, bool cross_check) {
    return dumps(to_json(scaling_experiment(make_spec("ckn", s, p), u, lambdas, eval_options(tol, cross_check, false, 0))));
  });
  m.def("_log_family_experiment", [](const GrushinSpace& s, const py::dict& p, std::vector<double> eps, double tol,
                                     bool cross_check) {
    return dumps(to_json(log_family_experiment(make_spec("ckn", s, p), eps, eval_options(tol, cross_check, false, 0))));
  });
  m.def("_sharp_grid", [](const GrushinSpace& s, double p, double alpha, std::vector<double> grid, double tol,
                          bool cross_check) {
    SearchConfig cfg;
    cfg.eps_shift_grid = std::move(grid);
    return dumps(to_json(sharp_search(InequalitySpec{s, HardyParams{p, alpha}}, cfg, eval_options(tol, cross_check, false, 0))));
  });

  m.def("lemma_lambda_check", &lemma_lambda_check, py::arg("xi"), py::arg("eta"), py::arg("lam"));
  m.def("lemma_p_probe", [](double p, std::int64_t n, std::uint64_t seed, int dim) {
    const LemmaPReport r = lemma_p_probe(p, n, seed, dim);
    py::dict d;
    d["p"] = r.p;
    d["samples"] = r.samples;
    d["first_sup"] = r.first_sup;
    d["second_inf"] = r.second_inf;
    d["first_bound_violations"] = r.first_bound_violations;
    d["finite"] = r.finite;
    return d;
  }, py::arg("p"), py::arg("n"), py::arg("seed") = 0, py::arg("dim") = 3);

  m.attr("__version__") = GRUSHIN_VERSION;
}
