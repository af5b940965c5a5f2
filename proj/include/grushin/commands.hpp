#pragma once

#include "grushin/error.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace grushin {

// process exit codes
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;       // usage or config error
inline constexpr int kExitRefused = 2;     // inadmissible, inapplicable, divergent integrals
inline constexpr int kExitNumerical = 3;   // quadrature or optimizer did not converge

int exit_code_for(ErrorKind kind) noexcept;

struct CommandOptions {
  std::string command;  // validate, eval, scale, translate, logfam, sharp
  std::string config_path;
  std::string out;      // JSON report path; the CSV goes next to it
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  bool force = false;
};

// Runs one command; human-readable summary to `out`, diagnostics to `err`.
int run_command(const CommandOptions& opts, std::ostream& out, std::ostream& err);

// `path` with its extension replaced by ".csv" (appended when there is none)
std::string csv_path_for(const std::string& json_path);

}  // namespace grushin
