#include "lexopt/game/checkpoint.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include "lexopt/error.hpp"
#include "lexopt/game/train.hpp"

namespace lexopt::game {
namespace {

static_assert(std::endian::native == std::endian::little, "checkpoint I/O assumes a little-endian host");

constexpr std::uint8_t kFloat64 = 1;

template <typename T>
void put(std::string& out, T value) {
  char buf[sizeof(T)];
  std::memcpy(buf, &value, sizeof(T));
  out.append(buf, sizeof(T));
}

class Reader {
 public:
  explicit Reader(std::string_view bytes) : bytes_(bytes) {}

  template <typename T>
  T get(const char* what) {
    T value;
    std::memcpy(&value, take(sizeof(T), what).data(), sizeof(T));
    return value;
  }

  std::string_view take(std::size_t n, const char* what) {
    if (n > bytes_.size() - pos_) {
      throw FormatError(std::string("checkpoint truncated while reading ") + what);
    }
    const auto out = bytes_.substr(pos_, n);
    pos_ += n;
    return out;
  }

  std::size_t pos() const { return pos_; }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::string_view bytes_;
  std::size_t pos_ = 0;
};

struct ManifestEntry {
  std::string name;
  std::vector<std::uint64_t> dims;
  std::uint64_t offset;
  std::uint64_t length;
};

}  // namespace

std::string serialize_checkpoint(const Checkpoint& ckpt) {
  std::string out(kCheckpointMagic, sizeof(kCheckpointMagic));
  out.push_back(static_cast<char>(kCheckpointVersion));
  out.append(7, '\0');

  nlohmann::json meta{{"config", to_json(ckpt.config)},
                      {"epoch", ckpt.epoch},
                      {"run_id", ckpt.run_id},
                      {"seed", ckpt.config.seed}};
  const std::string meta_text = meta.dump();
  put<std::uint64_t>(out, meta_text.size());
  out += meta_text;

  const auto tensors = ckpt.params.tensors();
  put<std::uint32_t>(out, static_cast<std::uint32_t>(tensors.size()));
  std::uint64_t offset = 0;
  for (const auto& [name, m] : tensors) {
    put<std::uint16_t>(out, static_cast<std::uint16_t>(name.size()));
    out += name;
    put<std::uint8_t>(out, kFloat64);
    put<std::uint8_t>(out, 2);
    put<std::uint64_t>(out, static_cast<std::uint64_t>(m->rows()));
    put<std::uint64_t>(out, static_cast<std::uint64_t>(m->cols()));
    const std::uint64_t length = static_cast<std::uint64_t>(m->size()) * sizeof(double);
    put<std::uint64_t>(out, offset);
    put<std::uint64_t>(out, length);
    offset += length;
  }
  for (const auto& [name, m] : tensors) {
    for (Eigen::Index r = 0; r < m->rows(); ++r) {
      for (Eigen::Index c = 0; c < m->cols(); ++c) put<double>(out, (*m)(r, c));
    }
  }
  return out;
}

Checkpoint deserialize_checkpoint(std::string_view bytes) {
  Reader in(bytes);
  if (in.take(8, "magic") != std::string_view(kCheckpointMagic, 8)) {
    throw FormatError("not a checkpoint file (bad magic)");
  }
  const auto version = in.get<std::uint8_t>("version");
  if (version != kCheckpointVersion) {
    throw FormatError("unsupported checkpoint version " + std::to_string(version));
  }
  in.take(7, "header");

  const auto meta_len = in.get<std::uint64_t>("metadata length");
  const auto meta_text = in.take(meta_len, "metadata");
  Checkpoint ckpt;
  try {
    const auto meta = nlohmann::json::parse(meta_text);
    ckpt.config = config_from_json(meta.at("config"));
    ckpt.epoch = meta.at("epoch").get<int>();
    ckpt.run_id = meta.at("run_id").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw FormatError(std::string("checkpoint metadata: ") + e.what());
  } catch (const ValidationError& e) {
    throw FormatError(std::string("checkpoint metadata: ") + e.what());
  }
  ckpt.params = AgentParams::zeros(dims_of(ckpt.config));
  auto tensors = ckpt.params.tensors();

  const auto count = in.get<std::uint32_t>("tensor count");
  if (count != tensors.size()) throw FormatError("checkpoint tensor count does not match its config");
  std::vector<ManifestEntry> manifest;
  for (std::uint32_t k = 0; k < count; ++k) {
    ManifestEntry e;
    const auto name_len = in.get<std::uint16_t>("tensor name length");
    e.name = std::string(in.take(name_len, "tensor name"));
    if (in.get<std::uint8_t>("dtype") != kFloat64) throw FormatError("tensor " + e.name + ": unsupported dtype");
    const auto rank = in.get<std::uint8_t>("rank");
    for (std::uint8_t r = 0; r < rank; ++r) e.dims.push_back(in.get<std::uint64_t>("dims"));
    e.offset = in.get<std::uint64_t>("offset");
    e.length = in.get<std::uint64_t>("byte length");
    manifest.push_back(std::move(e));
  }
  const std::size_t payload_start = in.pos();
  const std::size_t payload_size = in.remaining();
  std::uint64_t payload_end = 0;
  for (std::size_t k = 0; k < manifest.size(); ++k) {
    const auto& e = manifest[k];
    Mat& m = *tensors[k].second;
    if (e.name != tensors[k].first || e.dims.size() != 2 ||
        e.dims[0] != static_cast<std::uint64_t>(m.rows()) || e.dims[1] != static_cast<std::uint64_t>(m.cols()) ||
        e.length != static_cast<std::uint64_t>(m.size()) * sizeof(double)) {
      throw FormatError("checkpoint manifest entry '" + e.name + "' does not match " + tensors[k].first);
    }
    if (e.offset > payload_size || e.length > payload_size - e.offset) {
      throw FormatError("checkpoint truncated in tensor " + e.name);
    }
    payload_end = std::max(payload_end, e.offset + e.length);
    const char* src = bytes.data() + payload_start + e.offset;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        std::memcpy(&m(r, c), src, sizeof(double));
        src += sizeof(double);
      }
    }
  }
  if (payload_end != payload_size) throw FormatError("checkpoint has trailing bytes after the payload");
  return ckpt;
}

void save_checkpoint(const Checkpoint& ckpt, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  const std::string bytes = serialize_checkpoint(ckpt);
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
}

Checkpoint load_checkpoint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  const std::string bytes = ss.str();
  return deserialize_checkpoint(bytes);
}

}  // namespace lexopt::game
