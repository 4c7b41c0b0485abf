#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "lexopt/info/measures.hpp"

namespace lexopt::kin {

struct CountRow {
  std::string member;
  std::string term;
  double count = 0.0;
};

/// (member, term, count) records for one language. Members are labels of the
/// 32 non-ego relatives; counts may be fractional after polysemy splitting.
struct CountTable {
  std::string language;
  std::vector<CountRow> rows;

  /// Throws ValidationError on unknown or ego labels, negative or non-finite
  /// counts, and duplicate (member, term) pairs.
  void validate() const;
  double total() const;
};

/// A term with its corpus count and every member it may refer to.
struct RawTermCount {
  std::string term;
  double count = 0.0;
  std::vector<std::string> referents;
};

/// Post-split TSV: header `member<TAB>term<TAB>count`.
CountTable parse_count_table(std::string_view text, std::string language,
                             const std::string& source = "<memory>");
CountTable load_count_table(const std::filesystem::path& path, std::string language);

/// Pre-split TSV: header `term<TAB>count<TAB>members`, members comma-separated.
std::vector<RawTermCount> parse_raw_counts(std::string_view text,
                                           const std::string& source = "<memory>");
std::vector<RawTermCount> load_raw_counts(const std::filesystem::path& path);

/// Divides each term's count evenly among its referents. Output rows are in
/// canonical member order; terms keep their input order within a member.
CountTable split_polysemous_counts(const std::vector<RawTermCount>& raw, std::string language);

std::string serialize_count_table(const CountTable& table);

/// Need, encoder and Bayesian decoder estimated from relative frequencies.
struct EstimatedSystem {
  info::NamingSystem system;  // decoder holds the Bayesian decoder
  std::vector<bool> used_words;
};

/// Estimates over all 32 non-ego relatives. Throws ValidationError naming any
/// member with zero total count.
EstimatedSystem estimate_system(const CountTable& table);

/// Estimates over an explicit member subset (canonical labels). Rows of the
/// table must refer only to members of the subset.
EstimatedSystem estimate_system(const CountTable& table, const std::vector<std::string>& members);

}  // namespace lexopt::kin
