#include "cli/output.hpp"

#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>

#include <openssl/evp.h>

namespace entmed::cli {

using json = nlohmann::json;

std::string sha256_hex(const std::string& data) {
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
      EVP_DigestUpdate(ctx.get(), data.data(), data.size()) != 1 || EVP_DigestFinal_ex(ctx.get(), md, &len) != 1)
    throw std::runtime_error("sha256 failed");
  static const char* hex = "0123456789abcdef";
  std::string out;
  for (unsigned i = 0; i < len; ++i) {
    out += hex[md[i] >> 4];
    out += hex[md[i] & 15];
  }
  return out;
}

std::string sha256_file(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << is.rdbuf();
  return sha256_hex(ss.str());
}

json finish_manifest(json manifest, const std::string& out_dir, const std::vector<std::string>& files) {
  json hashes = json::object();
  for (const auto& f : files) hashes[f] = sha256_file((std::filesystem::path(out_dir) / f).string());
  manifest["files"] = hashes;
  manifest.erase("run_hash");
  manifest["run_hash"] = sha256_hex(manifest.dump());
  return manifest;
}

void write_manifest(const json& manifest, const std::string& path) {
  std::ofstream os(path);
  if (!os) throw std::runtime_error("cannot open " + path);
  os << manifest.dump(2) << '\n';
  if (!os) throw std::runtime_error("write failed for " + path);
}

}  // namespace entmed::cli
