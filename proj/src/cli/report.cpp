#include "lexopt/cli/report.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <sstream>

#include "lexopt/cli/output_set.hpp"
#include "lexopt/error.hpp"
#include "lexopt/game/trajectory_io.hpp"
#include "lexopt/info/tradeoff_io.hpp"
#include "lexopt/mc/listener_mc.hpp"

namespace fs = std::filesystem;

namespace lexopt::cli {
namespace {

using info::LogBase;

std::vector<std::string> report_columns(LogBase base) {
  const std::string u = base == LogBase::kBits ? "_bits" : "_nats";
  return {"source", "table", "run_id", "language", "seed", "epoch", "ego", "flip_rate", "n",
          "entropy" + u, "complexity" + u, "adjusted_complexity" + u, "info_loss" + u,
          "distance" + u, "accuracy", "std_distance", "std_info_loss", "std_accuracy",
          "train_loss", "strict_accuracy"};
}

std::string join(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  return out;
}

std::string table_name(const fs::path& p) { return p.stem().string(); }

// Expected header of a record file in a given unit system, or nothing when
// the table has no variant in that unit.
std::optional<std::string> expected_header(const std::string& file, LogBase base) {
  const std::string tradeoff = info::tradeoff_csv_header(base);
  if (file == "tradeoff.csv") return "language," + tradeoff;
  if (file == "summary.csv") {
    if (base == LogBase::kBits) return std::nullopt;
    return mc::summary_csv_header();
  }
  if (file == "trajectory.csv") {
    if (base == LogBase::kBits) return std::nullopt;
    return game::trajectory_csv_header();
  }
  if (file == "eval.csv") {
    if (base == LogBase::kBits) return std::nullopt;
    return game::evaluation_csv_header();
  }
  if (file == "report.csv") return join(report_columns(base));
  return std::nullopt;
}

// Column renames from a record table into the report schema.
const std::map<std::string, std::string>& renames(const std::string& table) {
  static const std::map<std::string, std::string> none;
  static const std::map<std::string, std::string> summary = {
      {"mean_distance", "distance_nats"},   {"mean_info_loss", "info_loss_nats"},
      {"mean_accuracy", "accuracy"},        {"complexity", "complexity_nats"},
      {"entropy", "entropy_nats"}};
  return table == "summary" ? summary : none;
}

struct InputFile {
  fs::path path;
  std::string kind;  // known record file name the contents follow
  std::string source;
  std::vector<std::string> lines;
  std::optional<LogBase> base;
};

std::vector<std::string> nonempty_lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!line.empty()) out.push_back(line);
  }
  return out;
}

}  // namespace

const std::vector<std::string>& known_record_files() {
  static const std::vector<std::string> files = {"tradeoff.csv", "summary.csv", "trajectory.csv",
                                                 "eval.csv", "report.csv"};
  return files;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> out;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        cur += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        cur += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      out.push_back(std::move(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(std::move(cur));
  return out;
}

std::string csv_field(const std::string& value) {
  if (value.find_first_of(",\"\n") == std::string::npos) return value;
  std::string out = "\"";
  for (char c : value) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + '"';
}

std::string merge_reports(const std::vector<std::string>& inputs) {
  if (inputs.empty()) throw ValidationError("report: no inputs given");
  const auto& known = known_record_files();

  std::vector<InputFile> files;
  for (const auto& arg : inputs) {
    const fs::path p(arg);
    if (fs::is_directory(p)) {
      for (const auto& name : known) {
        if (fs::is_regular_file(p / name)) files.push_back({p / name, name, arg, {}, {}});
      }
    } else if (fs::is_regular_file(p)) {
      // A merged report may carry any file name.
      std::string kind = p.filename().string();
      if (std::find(known.begin(), known.end(), kind) == known.end()) kind = "report.csv";
      files.push_back({p, kind, arg, {}, {}});
    } else {
      throw ValidationError("report: cannot open '" + arg + "'");
    }
  }
  if (files.empty()) throw ValidationError("report: no record files found in the inputs");

  std::vector<std::string> offending;
  for (auto& f : files) {
    f.lines = nonempty_lines(read_text_file(f.path));
    const std::string& name = f.kind;
    const std::string header = f.lines.empty() ? "" : f.lines.front();
    for (LogBase b : {LogBase::kNats, LogBase::kBits}) {
      if (expected_header(name, b) == header) f.base = b;
    }
    if (!f.base) offending.push_back(f.path.string() + " (unexpected header)");
  }
  const std::optional<LogBase> base = files.front().base;
  for (const auto& f : files) {
    if (f.base && base && *f.base != *base) offending.push_back(f.path.string() + " (units differ)");
  }
  if (!offending.empty()) {
    std::string msg = "report: schema mismatch in";
    for (const auto& o : offending) msg += "\n  " + o;
    throw FormatError(msg);
  }

  const auto columns = report_columns(*base);
  std::string out = join(columns) + '\n';
  for (const auto& f : files) {
    const std::string table = table_name(f.kind);
    if (table == "report") {
      for (std::size_t i = 1; i < f.lines.size(); ++i) out += f.lines[i] + '\n';
      continue;
    }
    const auto header = split_csv_line(f.lines.front());
    const auto& rename = renames(table);
    std::vector<int> slot(header.size(), -1);
    for (std::size_t h = 0; h < header.size(); ++h) {
      const auto it = rename.find(header[h]);
      const std::string& col = it == rename.end() ? header[h] : it->second;
      for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c] == col) slot[h] = static_cast<int>(c);
      }
    }
    for (std::size_t i = 1; i < f.lines.size(); ++i) {
      const auto fields = split_csv_line(f.lines[i]);
      if (fields.size() != header.size()) {
        throw FormatError(f.path.string() + ":" + std::to_string(i + 1) + ": expected " +
                          std::to_string(header.size()) + " fields");
      }
      std::vector<std::string> row(columns.size());
      row[0] = f.source;
      row[1] = table;
      for (std::size_t h = 0; h < header.size(); ++h) {
        if (slot[h] >= 0) row[static_cast<std::size_t>(slot[h])] = fields[h];
      }
      out += join(row) + '\n';
    }
  }
  return out;
}

}  // namespace lexopt::cli
