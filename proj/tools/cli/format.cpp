#include "cli/format.hpp"

#include <cstdio>
#include <cstdlib>

namespace idpart::cli {

std::string fmt12(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, "%.12g", value);
  std::string s(buffer);
  if (s == "-0") s = "0";
  return s;
}

double round12(double value) {
  const double r = std::strtod(fmt12(value).c_str(), nullptr);
  return r == 0.0 ? 0.0 : r;
}

}  // namespace idpart::cli
