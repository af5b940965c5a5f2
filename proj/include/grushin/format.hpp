#pragma once

#include <cstdio>
#include <string>

namespace grushin {

// shortest round-trip-safe text for a double
inline std::string num(double v) {
  char buf[32];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    double back = 0;
    if (std::sscanf(buf, "%lf", &back) == 1 && back == v) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace grushin
