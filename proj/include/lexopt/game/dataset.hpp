#pragma once

#include <cstdint>
#include <vector>

#include "lexopt/game/config.hpp"
#include "lexopt/info/distribution.hpp"
#include "lexopt/kin/kinship_graph.hpp"

namespace lexopt::game {

/// One game turn: the ego identity selects the graph; target and distractors
/// are node indices among the 32 non-ego members.
struct GameInstance {
  kin::EgoIdentity ego = kin::EgoIdentity::kBob;
  std::size_t target = 0;
  std::vector<std::size_t> distractors;

  /// {target} followed by the distractors.
  std::vector<std::size_t> candidates() const;
};

struct GameDataset {
  std::vector<GameInstance> train;
  std::vector<GameInstance> validation;
};

/// Ego uniform over {Bob, Alice}; target uniform over the 32 relatives or,
/// with need-weighted sampling, drawn from `need` (required then);
/// distractors uniform without replacement from the rest. The first
/// round(train_fraction * n) instances form the training split.
GameDataset generate_dataset(const TrainConfig& cfg, std::uint64_t seed,
                             const info::Distribution* need = nullptr);

}  // namespace lexopt::game
