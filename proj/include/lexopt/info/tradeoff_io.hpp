#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "lexopt/info/measures.hpp"

namespace lexopt::info {

enum class LogBase { kNats, kBits };

LogBase parse_log_base(const std::string& text);

/// Column names for the six trade-off fields, in serialization order:
/// entropy, complexity, adjusted complexity, information loss, distance,
/// accuracy. Information-valued names end in `_nats` or `_bits`.
std::vector<std::string> tradeoff_field_names(LogBase base = LogBase::kNats);

/// Values in the same order as tradeoff_field_names, converted to `base`.
std::vector<double> tradeoff_values(const TradeoffPoint& pt, LogBase base = LogBase::kNats);

std::string tradeoff_csv_header(LogBase base = LogBase::kNats);
std::string tradeoff_csv_row(const TradeoffPoint& pt, LogBase base = LogBase::kNats);

nlohmann::json to_json(const TradeoffPoint& pt, LogBase base = LogBase::kNats);
TradeoffPoint tradeoff_from_json(const nlohmann::json& j);

/// Shortest decimal text that round-trips a double; "inf" for infinity.
std::string format_real(double v);

}  // namespace lexopt::info
