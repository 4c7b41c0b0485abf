#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace lexopt::cli {

struct InputDigest {
  std::string path;
  std::string sha256;
};

/// Everything needed to replay a command: written as manifest.json into the
/// command's output directory.
struct RunManifest {
  std::string command;
  std::vector<std::string> argv;
  nlohmann::json config = nlohmann::json::object();
  std::vector<std::uint64_t> seeds;
  std::vector<InputDigest> inputs;
  std::string version;
  std::string timestamp;  // UTC, ISO 8601
  std::vector<std::string> outputs;
};

nlohmann::json to_json(const RunManifest& m);

std::string sha256_hex(std::string_view bytes);
InputDigest digest_file(const std::filesystem::path& path);

std::string utc_timestamp();
std::string tool_version();

}  // namespace lexopt::cli
