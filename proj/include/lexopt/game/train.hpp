#pragma once

#include <functional>
#include <vector>

#include "lexopt/game/config.hpp"
#include "lexopt/game/evaluate.hpp"

namespace lexopt::game {

struct TrajectoryRecord {
  int epoch = 0;  // completed epochs; 0 is the untrained state
  Evaluation eval;
  double train_loss = 0.0;  // mean game loss over the training split
};

/// Called at every recorded epoch with the parameters evaluated there.
using CheckpointSink = std::function<void(const TrajectoryRecord&, const AgentParams&)>;

struct TrainResult {
  AgentParams params;
  std::vector<TrajectoryRecord> trajectory;
};

/// Records epoch 0, then every `record_every` epochs and the final epoch.
/// `need` covers the 32 relatives; it drives evaluation and, with
/// need-weighted sampling, the training targets. Deterministic given the
/// config (including its seed).
TrainResult train(const TrainConfig& cfg, const info::Distribution& need,
                  const CheckpointSink& sink = {});

/// Index of the record whose averaged accuracy is closest to `target_accuracy`;
/// ties go to the earliest epoch. Throws ValidationError on an empty list.
std::size_t select_checkpoint(const std::vector<TrajectoryRecord>& trajectory, double target_accuracy);

ModelDims dims_of(const TrainConfig& cfg);

}  // namespace lexopt::game
