#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace lexopt::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kFormat = 3, kInvariant = 4 };

/// Entry point of the `lexopt` tool. Errors are reported on `err` and mapped
/// to exit codes: 2 usage or input, 3 data format, 4 internal invariant.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// Fixture root: $LEXOPT_DATA_DIR when set, else the build-time default.
std::filesystem::path data_dir();

/// An existing file path, or a language id resolved to <data>/counts/<id>.tsv.
std::filesystem::path resolve_counts(const std::string& arg);

}  // namespace lexopt::cli
