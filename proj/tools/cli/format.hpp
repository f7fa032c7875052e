#pragma once

#include <string>

namespace idpart::cli {

// 12 significant digits, "%.12g", negative zero printed as 0.
std::string fmt12(double value);

// value rounded to 12 significant digits, for JSON emission.
double round12(double value);

}  // namespace idpart::cli
