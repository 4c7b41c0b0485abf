#include "lexopt/game/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "lexopt/error.hpp"
#include "lexopt/game/rng.hpp"

namespace lexopt::game {

std::vector<std::size_t> GameInstance::candidates() const {
  std::vector<std::size_t> out;
  out.reserve(distractors.size() + 1);
  out.push_back(target);
  out.insert(out.end(), distractors.begin(), distractors.end());
  return out;
}

GameDataset generate_dataset(const TrainConfig& cfg, std::uint64_t seed, const info::Distribution* need) {
  const bool weighted = cfg.target_sampling == TargetSampling::kNeedWeighted;
  if (weighted && (need == nullptr || need->size() != kin::kNumRelatives)) {
    throw ValidationError("need-weighted target sampling requires a need distribution over 32 members");
  }
  if (cfg.n_distractors < 1 || static_cast<std::size_t>(cfg.n_distractors) > kin::kNumRelatives - 1) {
    throw ValidationError("distractor count out of range");
  }
  std::vector<double> cumulative;
  if (weighted) {
    cumulative.resize(kin::kNumRelatives);
    std::partial_sum(need->probs().begin(), need->probs().end(), cumulative.begin());
  }

  Rng rng(seed);
  std::vector<GameInstance> all;
  all.reserve(static_cast<std::size_t>(cfg.dataset_size));
  std::vector<std::size_t> pool(kin::kNumRelatives);
  for (int i = 0; i < cfg.dataset_size; ++i) {
    GameInstance inst;
    inst.ego = rng.index(2) == 0 ? kin::EgoIdentity::kBob : kin::EgoIdentity::kAlice;
    if (weighted) {
      const double u = rng.uniform() * cumulative.back();
      inst.target = static_cast<std::size_t>(
          std::upper_bound(cumulative.begin(), cumulative.end(), u) - cumulative.begin());
      inst.target = std::min(inst.target, kin::kNumRelatives - 1);
    } else {
      inst.target = rng.index(kin::kNumRelatives);
    }
    // Partial Fisher-Yates over the relatives other than the target.
    std::iota(pool.begin(), pool.end(), 0);
    std::swap(pool[inst.target], pool.back());
    const std::size_t available = kin::kNumRelatives - 1;
    for (int k = 0; k < cfg.n_distractors; ++k) {
      const auto ks = static_cast<std::size_t>(k);
      const std::size_t j = ks + rng.index(available - ks);
      std::swap(pool[ks], pool[j]);
      inst.distractors.push_back(pool[ks]);
    }
    all.push_back(std::move(inst));
  }

  const auto n_train = static_cast<std::size_t>(std::llround(cfg.train_fraction * cfg.dataset_size));
  GameDataset ds;
  ds.train.assign(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(n_train));
  ds.validation.assign(all.begin() + static_cast<std::ptrdiff_t>(n_train), all.end());
  return ds;
}

}  // namespace lexopt::game
