#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace lexopt::cli {

/// Files staged in memory and published together. Nothing touches the disk
/// until commit(); commit writes temporaries next to their targets and renames
/// them into place, removing every temporary if any step fails.
class OutputSet {
 public:
  explicit OutputSet(std::filesystem::path root) : root_(std::move(root)) {}

  /// `relative` may contain subdirectories; staging the same path twice replaces it.
  void add(const std::string& relative, std::string content);

  std::vector<std::string> names() const;
  const std::filesystem::path& root() const noexcept { return root_; }

  void commit() const;

 private:
  std::filesystem::path root_;
  std::vector<std::pair<std::string, std::string>> files_;
};

/// Atomic single-file write (temporary in the same directory, then rename).
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

std::string read_text_file(const std::filesystem::path& path);

}  // namespace lexopt::cli
