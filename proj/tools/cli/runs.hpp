#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "entmed/witness.hpp"

namespace entmed::cli {

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

void write_table_csv(const Table& t, const std::string& path);

struct RunOutput {
  bool tabular = false;
  CorrelationTrace trace;  // trajectory scenarios
  Table table;             // steady-state scenarios
  nlohmann::json info = nlohmann::json::object();  // unit conversions and solver facts
};

// resolved parameters as produced by resolve(); a list-valued field gives one series per element
RunOutput execute(const std::string& scenario, const nlohmann::json& params, std::uint64_t seed);

struct GridAxis {
  std::string key;
  double lo = 0.0;
  double hi = 0.0;
  int n = 0;
  std::vector<double> values() const;
};

// "key=lo:hi:n"
GridAxis parse_grid(const std::string& spec);

// one row per cell; steady scenarios report their outputs, trajectory scenarios the maximum of each series
Table sweep(const std::string& scenario, const nlohmann::json& params, const std::vector<GridAxis>& axes,
            std::uint64_t seed);

}  // namespace entmed::cli
