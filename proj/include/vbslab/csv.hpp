#pragma once

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace vbs {

/// Numeric CSV cell: 12 significant digits, the literal "inf" for +infinity.
/// NaN is never written.
inline std::string csv_number(double x) {
  if (std::isnan(x)) throw std::domain_error("refusing to write NaN to CSV");
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

}  // namespace vbs
