#include "lexopt/kin/count_table.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "lexopt/error.hpp"
#include "lexopt/info/tradeoff_io.hpp"
#include "lexopt/kin/kinship_graph.hpp"

namespace lexopt::kin {
namespace {

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string_view::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Lines with their 1-based numbers; blank lines skipped.
std::vector<std::pair<std::size_t, std::string_view>> lines_of(std::string_view text) {
  std::vector<std::pair<std::size_t, std::string_view>> out;
  std::size_t number = 0;
  for (auto line : split(text, '\n')) {
    ++number;
    line = trim(line);
    if (!line.empty()) out.emplace_back(number, line);
  }
  return out;
}

double parse_count(std::string_view field, const std::string& source, std::size_t line) {
  field = trim(field);
  double value = 0.0;
  const auto res = std::from_chars(field.data(), field.data() + field.size(), value);
  if (res.ec != std::errc() || res.ptr != field.data() + field.size()) {
    throw ParseError(source, line, "count '" + std::string(field) + "' is not a decimal number");
  }
  if (!std::isfinite(value) || value < 0.0) {
    throw ParseError(source, line, "count must be finite and non-negative");
  }
  return value;
}

void check_relative_label(std::string_view label, const std::string& source, std::size_t line) {
  const auto idx = member_index(label);
  if (!idx || *idx == kEgoIndex) {
    throw ParseError(source, line, "unknown family member '" + std::string(label) + "'");
  }
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

void CountTable::validate() const {
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& r : rows) {
    const auto idx = member_index(r.member);
    if (!idx || *idx == kEgoIndex) throw ValidationError("unknown family member '" + r.member + "'");
    if (!std::isfinite(r.count) || r.count < 0.0) {
      throw ValidationError("negative count for (" + r.member + ", " + r.term + ")");
    }
    if (!seen.insert({r.member, r.term}).second) {
      throw ValidationError("duplicate pair (" + r.member + ", " + r.term + ")");
    }
  }
}

double CountTable::total() const {
  double t = 0.0;
  for (const auto& r : rows) t += r.count;
  return t;
}

CountTable parse_count_table(std::string_view text, std::string language, const std::string& source) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw ParseError(source, 1, "empty count file");
  if (lines.front().second != "member\tterm\tcount") {
    throw ParseError(source, lines.front().first, "expected header 'member<TAB>term<TAB>count'");
  }
  CountTable table{std::move(language), {}};
  std::set<std::pair<std::string, std::string>> seen;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [number, line] = lines[i];
    const auto fields = split(line, '\t');
    if (fields.size() != 3) throw ParseError(source, number, "expected 3 tab-separated fields");
    const std::string member(trim(fields[0]));
    const std::string term(trim(fields[1]));
    check_relative_label(member, source, number);
    if (term.empty()) throw ParseError(source, number, "empty term");
    const double count = parse_count(fields[2], source, number);
    if (!seen.insert({member, term}).second) {
      throw ParseError(source, number, "duplicate pair (" + member + ", " + term + ")");
    }
    table.rows.push_back({member, term, count});
  }
  if (table.rows.empty()) throw ParseError(source, lines.front().first, "count file has no rows");
  return table;
}

CountTable load_count_table(const std::filesystem::path& path, std::string language) {
  return parse_count_table(read_file(path), std::move(language), path.string());
}

std::vector<RawTermCount> parse_raw_counts(std::string_view text, const std::string& source) {
  const auto lines = lines_of(text);
  if (lines.empty()) throw ParseError(source, 1, "empty raw count file");
  if (lines.front().second != "term\tcount\tmembers") {
    throw ParseError(source, lines.front().first, "expected header 'term<TAB>count<TAB>members'");
  }
  std::vector<RawTermCount> out;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto [number, line] = lines[i];
    const auto fields = split(line, '\t');
    if (fields.size() != 3) throw ParseError(source, number, "expected 3 tab-separated fields");
    RawTermCount raw;
    raw.term = std::string(trim(fields[0]));
    if (raw.term.empty()) throw ParseError(source, number, "empty term");
    raw.count = parse_count(fields[1], source, number);
    for (auto label : split(fields[2], ',')) {
      label = trim(label);
      if (label.empty()) continue;
      check_relative_label(label, source, number);
      raw.referents.emplace_back(label);
    }
    if (raw.referents.empty()) throw ParseError(source, number, "empty referent set");
    out.push_back(std::move(raw));
  }
  if (out.empty()) throw ParseError(source, lines.front().first, "raw count file has no rows");
  return out;
}

std::vector<RawTermCount> load_raw_counts(const std::filesystem::path& path) {
  return parse_raw_counts(read_file(path), path.string());
}

CountTable split_polysemous_counts(const std::vector<RawTermCount>& raw, std::string language) {
  // member index -> ordered (term, count) list
  std::map<std::size_t, std::vector<std::pair<std::string, double>>> by_member;
  for (const auto& entry : raw) {
    if (entry.referents.empty()) {
      throw ValidationError("term '" + entry.term + "' has an empty referent set");
    }
    const std::set<std::string> unique(entry.referents.begin(), entry.referents.end());
    const double share = entry.count / static_cast<double>(unique.size());
    for (const auto& label : unique) {
      const auto idx = member_index(label);
      if (!idx || *idx == kEgoIndex) throw ValidationError("unknown family member '" + label + "'");
      auto& terms = by_member[*idx];
      auto it = std::find_if(terms.begin(), terms.end(),
                             [&](const auto& t) { return t.first == entry.term; });
      if (it == terms.end()) {
        terms.emplace_back(entry.term, share);
      } else {
        it->second += share;
      }
    }
  }
  CountTable table{std::move(language), {}};
  for (const auto& [idx, terms] : by_member) {
    for (const auto& [term, count] : terms) {
      table.rows.push_back({std::string(member_inventory()[idx].label), term, count});
    }
  }
  return table;
}

std::string serialize_count_table(const CountTable& table) {
  std::string out = "member\tterm\tcount\n";
  for (const auto& r : table.rows) {
    out += r.member + '\t' + r.term + '\t' + info::format_real(r.count) + '\n';
  }
  return out;
}

}  // namespace lexopt::kin
