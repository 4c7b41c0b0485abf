#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "lexopt/game/config.hpp"
#include "lexopt/game/params.hpp"

namespace lexopt::game {

/// Binary checkpoint layout, all integers little-endian:
///
///   magic "LEXOPTCK" (8 bytes), version (1 byte, currently 1), 7 reserved zero bytes
///   u64 metadata length, metadata JSON (config, epoch, run_id, seed)
///   u32 tensor count, then per tensor:
///     u16 name length, name, u8 dtype (1 = float64), u8 rank, u64 dims[rank],
///     u64 payload offset (from the start of the payload block), u64 byte length
///   payload block: row-major float64 tensors
inline constexpr char kCheckpointMagic[8] = {'L', 'E', 'X', 'O', 'P', 'T', 'C', 'K'};
inline constexpr std::uint8_t kCheckpointVersion = 1;

struct Checkpoint {
  TrainConfig config;
  int epoch = 0;
  std::string run_id;
  AgentParams params;
};

std::string serialize_checkpoint(const Checkpoint& ckpt);
/// Throws FormatError on bad magic, unknown version, truncation or any
/// manifest that does not match the configured shapes.
Checkpoint deserialize_checkpoint(std::string_view bytes);

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path);
Checkpoint load_checkpoint(const std::filesystem::path& path);

}  // namespace lexopt::game
