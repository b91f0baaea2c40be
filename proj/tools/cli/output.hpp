#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

namespace entmed::cli {

std::string sha256_hex(const std::string& data);
std::string sha256_file(const std::string& path);

// adds "files" hashes and a "run_hash" over the canonical dump; keys are sorted and no clock is recorded
nlohmann::json finish_manifest(nlohmann::json manifest, const std::string& out_dir,
                               const std::vector<std::string>& files);
void write_manifest(const nlohmann::json& manifest, const std::string& path);

}  // namespace entmed::cli
