#include "lexopt/info/tradeoff_io.hpp"

#include <charconv>
#include <cmath>
#include <numbers>

#include "lexopt/error.hpp"

namespace lexopt::info {

LogBase parse_log_base(const std::string& text) {
  if (text == "nats") return LogBase::kNats;
  if (text == "bits") return LogBase::kBits;
  throw ValidationError("log base must be 'nats' or 'bits', got '" + text + "'");
}

std::vector<std::string> tradeoff_field_names(LogBase base) {
  const std::string unit = base == LogBase::kNats ? "_nats" : "_bits";
  return {"entropy" + unit,       "complexity" + unit, "adjusted_complexity" + unit,
          "info_loss" + unit,     "distance" + unit,   "accuracy"};
}

std::vector<double> tradeoff_values(const TradeoffPoint& pt, LogBase base) {
  const double k = base == LogBase::kNats ? 1.0 : 1.0 / std::numbers::ln2;
  return {pt.entropy_H * k,   pt.complexity_C * k, pt.adjusted_C * k,
          pt.info_loss_L * k, pt.distance_d * k,   pt.accuracy};
}

std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string tradeoff_csv_header(LogBase base) {
  std::string out;
  for (const auto& name : tradeoff_field_names(base)) {
    if (!out.empty()) out += ',';
    out += name;
  }
  return out;
}

std::string tradeoff_csv_row(const TradeoffPoint& pt, LogBase base) {
  std::string out;
  for (double v : tradeoff_values(pt, base)) {
    if (!out.empty()) out += ',';
    out += format_real(v);
  }
  return out;
}

nlohmann::json to_json(const TradeoffPoint& pt, LogBase base) {
  nlohmann::json j = nlohmann::json::object();
  const auto names = tradeoff_field_names(base);
  const auto values = tradeoff_values(pt, base);
  for (std::size_t i = 0; i < names.size(); ++i) {
    // JSON has no infinity literal.
    if (std::isfinite(values[i])) {
      j[names[i]] = values[i];
    } else {
      j[names[i]] = format_real(values[i]);
    }
  }
  return j;
}

TradeoffPoint tradeoff_from_json(const nlohmann::json& j) {
  auto get = [&](const char* key) -> double {
    const auto& v = j.at(key);
    if (v.is_string()) {
      const auto s = v.get<std::string>();
      if (s == "inf") return std::numeric_limits<double>::infinity();
      throw ValidationError(std::string("non-numeric field ") + key);
    }
    return v.get<double>();
  };
  TradeoffPoint pt;
  pt.entropy_H = get("entropy_nats");
  pt.complexity_C = get("complexity_nats");
  pt.adjusted_C = get("adjusted_complexity_nats");
  pt.info_loss_L = get("info_loss_nats");
  pt.distance_d = get("distance_nats");
  pt.accuracy = get("accuracy");
  return pt;
}

}  // namespace lexopt::info
