#pragma once

#include <cstdio>
#include <string>

namespace squeeze {

// Fixed output format for every table: scientific, 12 significant digits.
inline std::string sci(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.11e", v);
  return buf;
}

}  // namespace squeeze
