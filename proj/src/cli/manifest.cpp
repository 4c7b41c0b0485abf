#include "lexopt/cli/manifest.hpp"

#include <array>
#include <chrono>
#include <ctime>

#include <openssl/evp.h>

#include "lexopt/cli/output_set.hpp"
#include "lexopt/error.hpp"

#ifndef LEXOPT_VERSION
#define LEXOPT_VERSION "0.0.0"
#endif

namespace lexopt::cli {

nlohmann::json to_json(const RunManifest& m) {
  nlohmann::json inputs = nlohmann::json::array();
  for (const auto& in : m.inputs) inputs.push_back({{"path", in.path}, {"sha256", in.sha256}});
  return {{"command", m.command}, {"argv", m.argv},          {"config", m.config},
          {"seeds", m.seeds},     {"inputs", inputs},        {"version", m.version},
          {"timestamp", m.timestamp}, {"outputs", m.outputs}};
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw InvariantError("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int i = 0; i < len; ++i) {
    out += kHex[md[i] >> 4];
    out += kHex[md[i] & 0xf];
  }
  return out;
}

InputDigest digest_file(const std::filesystem::path& path) {
  return {path.string(), sha256_hex(read_text_file(path))};
}

std::string utc_timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

std::string tool_version() { return LEXOPT_VERSION; }

}  // namespace lexopt::cli
