#include "lexopt/cli/output_set.hpp"

#include <fstream>
#include <sstream>
#include <system_error>

#include "lexopt/error.hpp"

namespace fs = std::filesystem;

namespace lexopt::cli {
namespace {

fs::path temp_name(const fs::path& target) {
  return target.parent_path() / ("." + target.filename().string() + ".tmp");
}

void write_raw(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(content.data(), static_cast<std::streamsize>(content.size()));
  out.close();
  if (!out) throw ValidationError("cannot write '" + path.string() + "'");
}

}  // namespace

void OutputSet::add(const std::string& relative, std::string content) {
  const fs::path rel(relative);
  if (rel.empty() || rel.is_absolute() || rel.lexically_normal().string().starts_with("..")) {
    throw InvariantError("output path escapes the output directory: " + relative);
  }
  for (auto& [name, data] : files_) {
    if (name == relative) {
      data = std::move(content);
      return;
    }
  }
  files_.emplace_back(relative, std::move(content));
}

std::vector<std::string> OutputSet::names() const {
  std::vector<std::string> out;
  for (const auto& [name, data] : files_) out.push_back(name);
  return out;
}

void OutputSet::commit() const {
  std::vector<fs::path> created_dirs;
  std::vector<fs::path> temps;
  auto cleanup = [&] {
    std::error_code ec;
    for (const auto& t : temps) fs::remove(t, ec);
    for (auto it = created_dirs.rbegin(); it != created_dirs.rend(); ++it) fs::remove(*it, ec);
  };
  try {
    for (const auto& [name, data] : files_) {
      const fs::path target = root_ / name;
      // Record directories we create so a failed commit leaves no trace.
      std::vector<fs::path> missing;
      for (fs::path dir = target.parent_path(); !dir.empty() && !fs::exists(dir); dir = dir.parent_path()) {
        missing.push_back(dir);
      }
      for (auto it = missing.rbegin(); it != missing.rend(); ++it) {
        fs::create_directory(*it);
        created_dirs.push_back(*it);
      }
      const fs::path tmp = temp_name(target);
      temps.push_back(tmp);
      write_raw(tmp, data);
    }
    for (const auto& [name, data] : files_) {
      if (fs::is_directory(root_ / name)) {
        throw ValidationError("cannot write '" + (root_ / name).string() + "': a directory is in the way");
      }
    }
    for (std::size_t i = 0; i < files_.size(); ++i) {
      fs::rename(temps[i], root_ / files_[i].first);
    }
  } catch (const fs::filesystem_error& e) {
    cleanup();
    throw ValidationError(std::string("cannot write outputs: ") + e.what());
  } catch (...) {
    cleanup();
    throw;
  }
}

void write_file_atomic(const fs::path& path, const std::string& content) {
  const fs::path tmp = temp_name(path);
  try {
    write_raw(tmp, content);
    fs::rename(tmp, path);
  } catch (const fs::filesystem_error& e) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw ValidationError(std::string("cannot write output: ") + e.what());
  } catch (...) {
    std::error_code ec;
    fs::remove(tmp, ec);
    throw;
  }
}

std::string read_text_file(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in || fs::is_directory(path)) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace lexopt::cli
