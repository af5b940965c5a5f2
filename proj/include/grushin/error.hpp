#pragma once

#include <stdexcept>
#include <string>

namespace grushin {

enum class ErrorKind {
  invalid_argument,
  dimension_mismatch,
  inapplicable,   // a closed-form constant is undefined for this tuple
  degenerate,     // equation has no unique solution
  inadmissible,   // tuple fails its admissibility check
  integrability,  // an integral in the request diverges
  divergent,      // quadrature detected unbounded growth
  not_converged,  // evaluation budget exhausted
  config,         // malformed experiment config
};

const char* to_string(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

[[noreturn]] inline void fail(ErrorKind kind, const std::string& what) { throw Error(kind, what); }

inline void require(bool condition, ErrorKind kind, const std::string& what) {
  if (!condition) fail(kind, what);
}

}  // namespace grushin
