#include "grushin/config.hpp"

#include "grushin/error.hpp"
#include "grushin/fields.hpp"
#include "grushin/format.hpp"

#include <cmath>
#include <fstream>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace grushin {

using nlohmann::json;

std::vector<std::pair<std::string, int>> json_pointer_lines(const std::string& text) {
  struct Frame {
    bool object;
    std::string path;
    std::string key;
    int index = 0;
    bool expect_key = true;
    bool value_seen = false;  // arrays: current element already recorded
  };
  std::vector<std::pair<std::string, int>> out;
  std::vector<Frame> stack;
  int line = 1;
  auto escape = [](const std::string& k) {
    std::string e;
    for (char ch : k) {
      if (ch == '~') e += "~0";
      else if (ch == '/') e += "~1";
      else e += ch;
    }
    return e;
  };
  // path of a value starting now; records array elements as they begin
  auto value_path = [&]() -> std::string {
    if (stack.empty()) return "";
    Frame& f = stack.back();
    if (f.object) return f.path + "/" + escape(f.key);
    const std::string p = f.path + "/" + std::to_string(f.index);
    if (!f.value_seen) {
      out.emplace_back(p, line);
      f.value_seen = true;
    }
    return p;
  };
  for (size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    if (ch == '\n') {
      ++line;
      continue;
    }
    if (ch == ' ' || ch == '\t' || ch == '\r') continue;
    if (ch == '"') {
      std::string s;
      for (++i; i < text.size() && text[i] != '"'; ++i) {
        if (text[i] == '\\' && i + 1 < text.size()) ++i;
        if (text[i] == '\n') ++line;
        s += text[i];
      }
      if (!stack.empty() && stack.back().object && stack.back().expect_key) {
        stack.back().key = s;
        stack.back().expect_key = false;
        out.emplace_back(stack.back().path + "/" + escape(s), line);
      } else {
        value_path();
      }
      continue;
    }
    switch (ch) {
      case '{':
      case '[': {
        const std::string p = value_path();
        stack.push_back(Frame{ch == '{', p, ""});
        break;
      }
      case '}':
      case ']':
        if (!stack.empty()) stack.pop_back();
        break;
      case ',':
        if (!stack.empty()) {
          if (stack.back().object) stack.back().expect_key = true;
          else {
            ++stack.back().index;
            stack.back().value_seen = false;
          }
        }
        break;
      case ':': break;
      default: value_path(); break;
    }
  }
  return out;
}

namespace {

class Reader {
 public:
  Reader(const std::string& text, std::string source) : source_(std::move(source)) {
    for (auto& [p, l] : json_pointer_lines(text)) lines_.emplace(p, l);
  }

  [[noreturn]] void error(const std::string& pointer, const std::string& msg) const {
    std::string where = source_;
    // nearest enclosing pointer that has a recorded line
    std::string p = pointer;
    while (true) {
      const auto it = lines_.find(p);
      if (it != lines_.end()) {
        where += ":" + std::to_string(it->second);
        break;
      }
      const auto cut = p.rfind('/');
      if (cut == std::string::npos || p.empty()) break;
      p = p.substr(0, cut);
    }
    fail(ErrorKind::config, where + ": " + (pointer.empty() ? "/" : pointer) + ": " + msg);
  }

 private:
  std::string source_;
  std::map<std::string, int> lines_;
};

// An object whose keys must all be consumed.
class Obj {
 public:
  Obj(const Reader& rd, const json& j, std::string path) : rd_(rd), j_(j), path_(std::move(path)) {
    if (!j_.is_object()) rd_.error(path_, "expected an object");
  }

  bool has(const std::string& key) const { return j_.contains(key); }

  const json& at(const std::string& key) {
    if (!j_.contains(key)) rd_.error(path_, "missing required key \"" + key + "\"");
    used_.insert(key);
    return j_.at(key);
  }

  std::string child(const std::string& key) const { return path_ + "/" + key; }

  double number(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number()) rd_.error(child(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) rd_.error(child(key), "must be finite");
    return d;
  }
  double number(const std::string& key, double fallback) { return has(key) ? number(key) : fallback; }

  std::int64_t integer(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number_integer()) rd_.error(child(key), "expected an integer");
    return v.get<std::int64_t>();
  }
  std::int64_t integer(const std::string& key, std::int64_t fallback) { return has(key) ? integer(key) : fallback; }

  std::uint64_t unsigned_integer(const std::string& key) {
    const json& v = at(key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0))
      rd_.error(child(key), "expected a nonnegative integer");
    return v.get<std::uint64_t>();
  }

  bool boolean(const std::string& key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_boolean()) rd_.error(child(key), "expected true or false");
    return v.get<bool>();
  }

  std::string string(const std::string& key) {
    const json& v = at(key);
    if (!v.is_string()) rd_.error(child(key), "expected a string");
    return v.get<std::string>();
  }
  std::string string(const std::string& key, const std::string& fallback) { return has(key) ? string(key) : fallback; }

  std::vector<double> numbers(const std::string& key) {
    const json& v = at(key);
    if (!v.is_array()) rd_.error(child(key), "expected an array of numbers");
    std::vector<double> out;
    for (size_t i = 0; i < v.size(); ++i) {
      if (!v[i].is_number()) rd_.error(child(key) + "/" + std::to_string(i), "expected a number");
      out.push_back(v[i].get<double>());
    }
    return out;
  }

  Obj object(const std::string& key) { return Obj(rd_, at(key), child(key)); }

  void finish() const {
    for (auto it = j_.begin(); it != j_.end(); ++it)
      if (!used_.count(it.key())) rd_.error(child(it.key()), "unknown key");
  }

  const Reader& reader() const { return rd_; }
  const std::string& path() const { return path_; }

 private:
  const Reader& rd_;
  const json& j_;
  std::string path_;
  std::set<std::string> used_;
};

// runs a constructor that validates its arguments and re-labels its errors
template <class F>
auto guarded(const Obj& o, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::config) throw;
    o.reader().error(o.path(), e.what());
  }
}

InequalitySpec parse_inequality(Obj o, const GrushinSpace& space) {
  const std::string kind = o.string("kind");
  InequalitySpec spec{space, HardyParams{}};
  if (kind == "hardy") {
    HardyParams h;
    h.p = o.number("p");
    h.alpha = o.number("alpha", 0.0);
    spec.params = h;
  } else if (kind == "whs") {
    WhsParams w;
    w.p = o.number("p");
    w.s = o.number("s");
    w.alpha = o.number("alpha", 0.0);
    spec.params = w;
  } else if (kind == "sobolev") {
    spec.params = SobolevParams{o.number("p")};
  } else if (kind == "ckn") {
    CknParams c;
    c.p = o.number("p");
    c.r = o.number("r");
    c.a = o.number("a");
    c.alpha = o.number("alpha");
    c.sigma = o.number("sigma");
    // the q-factor drops out at a = 1; q and beta then default to placeholders
    const bool q_free = c.a == 1.0;
    c.q = q_free ? o.number("q", c.p) : o.number("q");
    c.beta = q_free ? o.number("beta", c.sigma) : o.number("beta");
    spec.params = c;
  } else {
    o.reader().error(o.child("kind"), "unknown inequality kind \"" + kind + "\" (hardy, whs, ckn, sobolev)");
  }
  o.finish();
  return spec;
}

TransformConfig parse_transform(Obj o) {
  TransformConfig t;
  t.kind = o.string("kind");
  if (t.kind == "dilation") {
    t.lambda = o.number("lambda");
  } else if (t.kind == "scale") {
    t.c = o.number("c");
  } else if (t.kind == "translation") {
    t.x0 = o.numbers("x0");
    t.y0 = o.numbers("y0");
    t.lambda = o.number("lambda", 1.0);
  } else {
    o.reader().error(o.child("kind"), "unknown transform \"" + t.kind + "\" (dilation, scale, translation)");
  }
  o.finish();
  return t;
}

FieldConfig parse_field(Obj o) {
  FieldConfig f;
  f.family = o.string("family");
  if (f.family == "bump") {
    f.r_inner = o.number("r_inner", 1.0);
    f.r_outer = o.number("r_outer", 2.0);
  } else if (f.family == "log") {
    f.eps = o.number("eps");
    f.gamma = o.number("gamma");
    f.r = o.number("r");
  } else if (f.family == "hardy_extremal") {
    f.p = o.number("p");
    f.alpha = o.number("alpha", 0.0);
    f.eps_shift = o.number("eps_shift");
    f.cut_ratio = o.number("cut_ratio", kDefaultCutRatio);
  } else {
    o.reader().error(o.child("family"), "unknown field family \"" + f.family + "\" (bump, log, hardy_extremal)");
  }
  if (o.has("transform")) {
    const json& arr = o.at("transform");
    const std::string path = o.child("transform");
    if (!arr.is_array()) o.reader().error(path, "expected an array of transforms");
    for (size_t i = 0; i < arr.size(); ++i) f.transforms.push_back(parse_transform(Obj(o.reader(), arr[i], path + "/" + std::to_string(i))));
  }
  o.finish();
  return f;
}

SearchConfig parse_search(Obj o) {
  SearchConfig s;
  const std::string mode = o.string("mode", "grid");
  if (mode == "grid") s.mode = SearchMode::grid;
  else if (mode == "golden") s.mode = SearchMode::golden;
  else if (mode == "nelder_mead") s.mode = SearchMode::nelder_mead;
  else o.reader().error(o.child("mode"), "unknown search mode \"" + mode + "\" (grid, golden, nelder_mead)");
  if (o.has("eps_shift")) s.eps_shift_grid = o.numbers("eps_shift");
  s.lo = o.number("lo", s.lo);
  s.hi = o.number("hi", s.hi);
  s.cut_ratio = o.number("cut_ratio", s.cut_ratio);
  s.max_iterations = static_cast<int>(o.integer("max_iterations", s.max_iterations));
  s.x_tol = o.number("x_tol", s.x_tol);
  o.finish();
  return s;
}

}  // namespace

ExperimentConfig parse_config(const std::string& text, const std::string& source) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::config, source + ": " + e.what());
  }
  const Reader rd(text, source);
  Obj root(rd, doc, "");
  ExperimentConfig cfg;
  cfg.echo = doc;

  const std::int64_t version = root.integer("version");
  if (version != kConfigVersion) rd.error("/version", "unsupported version " + std::to_string(version) + " (expected 1)");
  cfg.version = static_cast<int>(version);

  cfg.description = root.string("description", "");
  {
    Obj s = root.object("space");
    const auto d = s.integer("d"), k = s.integer("k");
    const double mu = s.number("mu");
    s.finish();
    if (d < 1 || d > 64) rd.error("/space/d", "must be an integer in [1, 64]");
    if (k < 1 || k > 64) rd.error("/space/k", "must be an integer in [1, 64]");
    cfg.space = guarded(s, [&] { return GrushinSpace(static_cast<int>(d), static_cast<int>(k), mu); });
  }
  if (root.has("inequality")) cfg.inequality = parse_inequality(root.object("inequality"), *cfg.space);
  if (root.has("field")) cfg.field = parse_field(root.object("field"));
  if (root.has("lambdas")) cfg.lambdas = root.numbers("lambdas");
  if (root.has("eps")) cfg.eps = root.numbers("eps");
  if (root.has("translation")) {
    Obj t = root.object("translation");
    cfg.x0 = t.numbers("x0");
    cfg.y0 = t.numbers("y0");
    t.finish();
    if (static_cast<int>(cfg.x0->size()) != cfg.space->d()) rd.error("/translation/x0", "length must equal d");
    if (static_cast<int>(cfg.y0->size()) != cfg.space->k()) rd.error("/translation/y0", "length must equal k");
  }
  if (root.has("search")) cfg.search = parse_search(root.object("search"));

  cfg.eval.tol = root.number("tol", cfg.eval.tol);
  if (!(cfg.eval.tol > 0.0 && cfg.eval.tol < 1.0)) rd.error("/tol", "must lie in (0, 1)");
  if (root.has("seed")) cfg.eval.seed = root.unsigned_integer("seed");
  if (root.has("quadrature")) {
    Obj q = root.object("quadrature");
    cfg.eval.quad.order = static_cast<int>(q.integer("order", cfg.eval.quad.order));
    cfg.eval.quad.max_evals = q.integer("max_evals", cfg.eval.quad.max_evals);
    cfg.eval.cross_check = q.boolean("cross_check", cfg.eval.cross_check);
    cfg.eval.mc_samples = q.integer("mc_samples", cfg.eval.mc_samples);
    q.finish();
    if (cfg.eval.quad.order < 1 || cfg.eval.quad.order > 200) rd.error("/quadrature/order", "must lie in [1, 200]");
    if (cfg.eval.quad.max_evals < 1) rd.error("/quadrature/max_evals", "must be positive");
    if (cfg.eval.mc_samples < 1) rd.error("/quadrature/mc_samples", "must be positive");
  }
  if (root.has("output")) {
    Obj o = root.object("output");
    cfg.output.json = o.string("json", "");
    cfg.output.csv = o.string("csv", "");
    o.finish();
  }
  root.finish();
  if (cfg.search) cfg.search->seed = cfg.eval.seed;
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail(ErrorKind::config, path + ": cannot open config file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), path);
}

FieldPtr build_field(const GrushinSpace& space, const FieldConfig& cfg) {
  FieldPtr u;
  if (cfg.family == "bump") u = make_bump(space, cfg.r_inner, cfg.r_outer);
  else if (cfg.family == "log") u = make_log_family(space, cfg.eps, cfg.gamma, cfg.r);
  else if (cfg.family == "hardy_extremal") u = make_hardy_extremal(space, cfg.p, cfg.alpha, cfg.eps_shift, cfg.cut_ratio);
  else fail(ErrorKind::config, "unknown field family \"" + cfg.family + "\"");
  for (const auto& t : cfg.transforms) {
    if (t.kind == "dilation") u = dilate_field(u, t.lambda);
    else if (t.kind == "scale") u = scale_field(u, t.c);
    else if (t.kind == "translation") u = translate_field(u, t.x0, t.y0, t.lambda);
    else fail(ErrorKind::config, "unknown transform \"" + t.kind + "\"");
  }
  return u;
}

}  // namespace grushin
