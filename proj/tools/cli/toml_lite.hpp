#pragma once

#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

namespace entmed::cli {

class TomlError : public std::runtime_error {
 public:
  TomlError(const std::string& where, const std::string& msg)
      : std::runtime_error(where + ": " + msg), where_(where), msg_(msg) {}
  const std::string& where() const { return where_; }
  const std::string& message() const { return msg_; }

 private:
  std::string where_;
  std::string msg_;
};

// TOML subset: [table] and [a.b] headers, key = value with numbers, strings, booleans and
// single-line or multi-line arrays of scalars, # comments
nlohmann::json parse_toml(const std::string& text, const std::string& source = "<config>");
nlohmann::json parse_toml_file(const std::string& path);

// one scalar or array in TOML syntax; unquoted words are taken as strings
nlohmann::json parse_toml_value(const std::string& text);

}  // namespace entmed::cli
