#include "lexopt/game/trajectory_io.hpp"

#include "lexopt/info/tradeoff_io.hpp"

namespace lexopt::game {

std::string trajectory_csv_header() {
  return "run_id,seed,epoch,ego," + info::tradeoff_csv_header() + ",train_loss";
}

std::string trajectory_csv_rows(const std::string& run_id, std::uint64_t seed,
                                const std::vector<TrajectoryRecord>& trajectory) {
  std::string out;
  for (const auto& rec : trajectory) {
    const std::string prefix = run_id + ',' + std::to_string(seed) + ',' + std::to_string(rec.epoch) + ',';
    const std::string suffix = ',' + info::format_real(rec.train_loss) + '\n';
    for (const auto& e : rec.eval.per_ego) {
      out += prefix + std::string(kin::ego_name(e.ego)) + ',' + info::tradeoff_csv_row(e.point) + suffix;
    }
    out += prefix + "avg," + info::tradeoff_csv_row(rec.eval.average) + suffix;
  }
  return out;
}

std::string evaluation_csv_header() {
  return "run_id,epoch,ego," + info::tradeoff_csv_header() + ",strict_accuracy";
}

std::string evaluation_csv_rows(const std::string& run_id, int epoch, const Evaluation& ev) {
  const std::string prefix = run_id + ',' + std::to_string(epoch) + ',';
  std::string out;
  for (const auto& e : ev.per_ego) {
    out += prefix + std::string(kin::ego_name(e.ego)) + ',' + info::tradeoff_csv_row(e.point) + ',' +
           info::format_real(e.strict_accuracy) + '\n';
  }
  out += prefix + "avg," + info::tradeoff_csv_row(ev.average) + ',' + info::format_real(ev.strict_accuracy) + '\n';
  return out;
}

}  // namespace lexopt::game
