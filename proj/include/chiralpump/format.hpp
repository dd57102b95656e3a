#pragma once

#include <cstdio>
#include <string>

namespace chiralpump {

/// 12-significant-digit decimal formatting used by every data file. C-locale
/// snprintf keeps the output byte-identical across runs and environments.
inline std::string fmt_g12(double x) {
  if (x == 0.0) x = 0.0;  // fold -0
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return std::string(buf);
}

inline std::string fmt_g(double x) {
  if (x == 0.0) x = 0.0;
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%g", x);
  return std::string(buf);
}

}  // namespace chiralpump
