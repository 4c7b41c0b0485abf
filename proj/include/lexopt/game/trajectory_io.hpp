#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lexopt/game/train.hpp"

namespace lexopt::game {

/// `run_id,seed,epoch,ego,<trade-off fields>,train_loss`.
std::string trajectory_csv_header();

/// Three rows per record: Bob, Alice and their average ("avg").
std::string trajectory_csv_rows(const std::string& run_id, std::uint64_t seed,
                                const std::vector<TrajectoryRecord>& trajectory);

/// `run_id,epoch,ego,<trade-off fields>,strict_accuracy`.
std::string evaluation_csv_header();

/// Bob, Alice and average rows for one evaluated checkpoint.
std::string evaluation_csv_rows(const std::string& run_id, int epoch, const Evaluation& ev);

}  // namespace lexopt::game
