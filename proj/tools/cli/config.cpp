#include "cli/config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

namespace idpart::cli {

namespace {

std::string key_path(std::string_view context, std::string_view key) {
  return context.empty() ? std::string(key) : std::string(context) + "." + std::string(key);
}

const Json* find(const Json& j, std::string_view key) {
  auto it = j.find(std::string(key));
  return it == j.end() ? nullptr : &*it;
}

}  // namespace

Json load_config(const std::string& path) {
  if (path.empty()) return Json::object();
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config file '" + path + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  Json j;
  try {
    j = Json::parse(buffer.str());
  } catch (const Json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  require_object(j, "config");
  return j;
}

void require_object(const Json& j, std::string_view context) {
  if (!j.is_object()) throw ConfigError(std::string(context) + " must be a JSON object");
}

void require_known_keys(const Json& j, std::initializer_list<std::string_view> allowed,
                        std::string_view context) {
  require_object(j, context.empty() ? "config" : context);
  for (const auto& [key, value] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError("unknown key '" + key_path(context, key) + "'");
    }
  }
}

std::optional<long long> optional_int(const Json& j, std::string_view key, long long min_value,
                                      long long max_value) {
  const Json* v = find(j, key);
  if (!v) return std::nullopt;
  if (!v->is_number_integer()) throw ConfigError("'" + std::string(key) + "' must be an integer");
  const auto value = v->get<long long>();
  if (value < min_value || value > max_value) {
    throw ConfigError("'" + std::string(key) + "' must lie in [" + std::to_string(min_value) + ", " +
                      std::to_string(max_value) + "]");
  }
  return value;
}

std::optional<double> optional_number(const Json& j, std::string_view key) {
  const Json* v = find(j, key);
  if (!v) return std::nullopt;
  if (!v->is_number()) throw ConfigError("'" + std::string(key) + "' must be a number");
  const double value = v->get<double>();
  if (!std::isfinite(value)) throw ConfigError("'" + std::string(key) + "' must be finite");
  return value;
}

std::optional<bool> optional_bool(const Json& j, std::string_view key) {
  const Json* v = find(j, key);
  if (!v) return std::nullopt;
  if (!v->is_boolean()) throw ConfigError("'" + std::string(key) + "' must be true or false");
  return v->get<bool>();
}

std::optional<std::string> optional_string(const Json& j, std::string_view key) {
  const Json* v = find(j, key);
  if (!v) return std::nullopt;
  if (!v->is_string()) throw ConfigError("'" + std::string(key) + "' must be a string");
  return v->get<std::string>();
}

std::optional<std::vector<std::string>> optional_string_list(const Json& j, std::string_view key) {
  const Json* v = find(j, key);
  if (!v) return std::nullopt;
  if (!v->is_array()) throw ConfigError("'" + std::string(key) + "' must be an array of strings");
  std::vector<std::string> out;
  for (const auto& item : *v) {
    if (!item.is_string()) throw ConfigError("'" + std::string(key) + "' must be an array of strings");
    out.push_back(item.get<std::string>());
  }
  return out;
}

Complex parse_complex(const Json& j, std::string_view context) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number()) {
    throw ConfigError(std::string(context) + " must be a [re, im] pair");
  }
  const Complex c{j[0].get<double>(), j[1].get<double>()};
  if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
    throw ConfigError(std::string(context) + " must be finite");
  }
  return c;
}

std::vector<Complex> parse_complex_list(const Json& j, std::string_view context) {
  if (!j.is_array()) throw ConfigError(std::string(context) + " must be an array of [re, im] pairs");
  std::vector<Complex> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i) {
    out.push_back(parse_complex(j[i], std::string(context) + "[" + std::to_string(i) + "]"));
  }
  return out;
}

CMatrix parse_complex_matrix(const Json& j, std::string_view context) {
  if (!j.is_array() || j.empty()) throw ConfigError(std::string(context) + " must be a matrix");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto first = parse_complex_list(j[0], std::string(context) + "[0]");
  CMatrix m(rows, static_cast<Eigen::Index>(first.size()));
  for (Eigen::Index r = 0; r < rows; ++r) {
    const auto row = parse_complex_list(j[static_cast<std::size_t>(r)],
                                        std::string(context) + "[" + std::to_string(r) + "]");
    if (static_cast<Eigen::Index>(row.size()) != m.cols()) {
      throw ConfigError(std::string(context) + " rows must all have the same length");
    }
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = row[static_cast<std::size_t>(c)];
  }
  return m;
}

}  // namespace idpart::cli
