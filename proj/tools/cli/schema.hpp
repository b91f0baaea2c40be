#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace entmed::cli {

class SchemaError : public std::runtime_error {
 public:
  SchemaError(const std::string& path, const std::string& msg)
      : std::runtime_error(path + ": " + msg), path_(path) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class Kind { number, integer, boolean, string };

struct Field {
  std::string key;
  Kind kind = Kind::number;
  nlohmann::json def;
  double lo = -INFINITY;
  double hi = INFINITY;
  bool series = false;  // an array runs one series per element
  std::string doc;
};

struct Schema {
  std::string scenario;
  std::string summary;
  std::vector<Field> fields;
  bool sweepable = false;  // one output row per parameter set

  const Field* find(const std::string& key) const;
};

const std::vector<Schema>& schemas();
const Schema& schema_for(const std::string& scenario);
std::vector<std::string> scenario_list();

// defaults applied, types and ranges checked; at most one series field may hold an array
nlohmann::json resolve(const Schema& s, const nlohmann::json& table);

// "key=value" or "scenario.key=value" applied to the scenario table
void apply_override(nlohmann::json& table, const std::string& scenario, const std::string& assignment);

}  // namespace entmed::cli
