#pragma once

#include "grushin/engine.hpp"
#include "grushin/space.hpp"

#include <json.hpp>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace grushin {

inline constexpr int kConfigVersion = 1;

struct TransformConfig {
  std::string kind;  // "dilation", "scale", "translation"
  double lambda = 1;
  double c = 1;
  std::vector<double> x0, y0;
};

struct FieldConfig {
  std::string family;  // "bump", "log", "hardy_extremal"
  double r_inner = 1, r_outer = 2;
  double eps = 0, gamma = 0, r = 0;
  double p = 0, alpha = 0, eps_shift = 0, cut_ratio = kDefaultCutRatio;
  std::vector<TransformConfig> transforms;
};

struct OutputConfig {
  std::string json;
  std::string csv;
};

struct ExperimentConfig {
  int version = kConfigVersion;
  std::optional<GrushinSpace> space;
  std::optional<InequalitySpec> inequality;
  std::optional<FieldConfig> field;
  std::vector<double> lambdas;
  std::vector<double> eps;
  std::optional<std::vector<double>> x0, y0;
  std::optional<SearchConfig> search;
  EvalOptions eval;
  OutputConfig output;
  std::string description;
  nlohmann::json echo;  // the parsed document, for the run record
};

// Strict parse: unknown keys and wrong types are config errors that name the
// JSON pointer and the line where it appears. `source` labels messages.
ExperimentConfig parse_config(const std::string& text, const std::string& source = "<config>");
ExperimentConfig load_config(const std::string& path);

FieldPtr build_field(const GrushinSpace& space, const FieldConfig& cfg);

// JSON pointer -> 1-based line of its key (or array element) in `text`
std::vector<std::pair<std::string, int>> json_pointer_lines(const std::string& text);

}  // namespace grushin
