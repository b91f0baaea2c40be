#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace entmed::cli {

struct PresetRun {
  std::string file;      // CSV stem inside the output directory
  std::string scenario;
  nlohmann::json table;  // scenario table before defaults
};

struct Preset {
  std::string id;
  std::string summary;
  std::vector<PresetRun> runs;
  std::vector<std::string> grid;  // non-empty: the single run is a sweep over these axes
};

const std::vector<Preset>& presets();
const Preset& preset_for(const std::string& id);

}  // namespace entmed::cli
