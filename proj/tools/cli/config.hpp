#pragma once

// Scenario-file loading and strict schema helpers. Every accessor throws
// ConfigError with the offending key path on a type or range mismatch.

#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "idpart/hilbert.hpp"

namespace idpart::cli {

using Json = nlohmann::json;

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Empty path yields an empty object. The document must be a JSON object;
// an unreadable file is an IoError.
Json load_config(const std::string& path);

void require_object(const Json& j, std::string_view context);
void require_known_keys(const Json& j, std::initializer_list<std::string_view> allowed,
                        std::string_view context);

std::optional<long long> optional_int(const Json& j, std::string_view key, long long min_value,
                                      long long max_value);
std::optional<double> optional_number(const Json& j, std::string_view key);
std::optional<bool> optional_bool(const Json& j, std::string_view key);
std::optional<std::string> optional_string(const Json& j, std::string_view key);
std::optional<std::vector<std::string>> optional_string_list(const Json& j, std::string_view key);

// [re, im] pair or a bare real number.
Complex parse_complex(const Json& j, std::string_view context);
std::vector<Complex> parse_complex_list(const Json& j, std::string_view context);
// Rows of [re, im] entries.
CMatrix parse_complex_matrix(const Json& j, std::string_view context);

}  // namespace idpart::cli
