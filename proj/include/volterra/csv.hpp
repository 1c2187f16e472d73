#pragma once

#include <cmath>
#include <cstdio>
#include <string>

namespace volterra::csv {

/// Scientific notation with 17 significant digits; "inf", "-inf", "nan"
/// for non-finite values.
inline std::string number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.16e", v);
  return buf;
}

}  // namespace volterra::csv
