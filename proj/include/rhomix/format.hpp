#pragma once

#include <cstdio>
#include <string>

namespace rhomix {

// All floating-point output goes through this: 17 significant digits, enough
// to round-trip a double exactly and keep emitted bytes reproducible.
inline std::string fmt17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return std::string(buf);
}

}  // namespace rhomix
