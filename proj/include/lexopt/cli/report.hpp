#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace lexopt::cli {

/// Record files a report understands, in the order they are read from a directory.
const std::vector<std::string>& known_record_files();

/// Splits one CSV line; fields may be double-quoted with "" escapes.
std::vector<std::string> split_csv_line(const std::string& line);
std::string csv_field(const std::string& value);

/// Merges record files into one long-format table with `source` and `table`
/// columns followed by a fixed set of metric columns. Every input row becomes
/// exactly one output row; a previously merged report passes through unchanged.
/// Throws ValidationError on an empty input list or when no record file is
/// found, and FormatError naming every file whose header does not match its
/// table or whose units differ from the first file's.
std::string merge_reports(const std::vector<std::string>& inputs);

}  // namespace lexopt::cli
