#include "lexopt/game/train.hpp"

#include <cmath>
#include <numeric>

#include "lexopt/error.hpp"
#include "lexopt/game/adam.hpp"
#include "lexopt/game/dataset.hpp"

namespace lexopt::game {
namespace {

enum Stream : std::uint64_t { kInit = 1, kData = 2, kShuffle = 3, kNoise = 4, kProbe = 5 };

std::vector<Vec> draw_noise(std::size_t count, int vocab, Rng& rng) {
  std::vector<Vec> noise(count, Vec(vocab));
  for (auto& n : noise) {
    for (int i = 0; i < vocab; ++i) n(i) = rng.gumbel();
  }
  return noise;
}

double mean_loss(const AgentParams& params, const GameGraphs& graphs,
                 const std::vector<GameInstance>& data, const TrainConfig& cfg, Rng& rng) {
  double total = 0.0;
  const std::size_t bs = static_cast<std::size_t>(cfg.batch_size);
  for (std::size_t start = 0; start < data.size(); start += bs) {
    const std::size_t len = std::min(bs, data.size() - start);
    const auto noise = draw_noise(len, cfg.vocab_size, rng);
    total += batch_loss(params, graphs, std::span(data).subspan(start, len), noise,
                        cfg.gumbel_temperature) *
             static_cast<double>(len);
  }
  return total / static_cast<double>(data.size());
}

}  // namespace

ModelDims dims_of(const TrainConfig& cfg) {
  ModelDims dims;
  dims.embedding_dim = cfg.embedding_dim;
  dims.hidden_dim = cfg.hidden_dim;
  dims.vocab_size = cfg.vocab_size;
  dims.layers = cfg.graph_net_layers;
  return dims;
}

TrainResult train(const TrainConfig& cfg, const info::Distribution& need, const CheckpointSink& sink) {
  cfg.validate();
  if (need.size() != kin::kNumRelatives) throw ValidationError("need distribution must cover the 32 relatives");

  const GameGraphs graphs = GameGraphs::build(cfg.graph_pruning);
  Rng init_rng(mix_seed(cfg.seed, kInit));
  TrainResult result{AgentParams::xavier(dims_of(cfg), init_rng), {}};
  AgentParams& params = result.params;

  const GameDataset data = generate_dataset(
      cfg, mix_seed(cfg.seed, kData),
      cfg.target_sampling == TargetSampling::kNeedWeighted ? &need : nullptr);
  if (data.train.empty()) throw ValidationError("training split is empty");

  Adam adam(params, AdamSettings{cfg.learning_rate});
  AgentParams grad = AgentParams::zeros(params.dims);
  Rng shuffle_rng(mix_seed(cfg.seed, kShuffle));
  Rng noise_rng(mix_seed(cfg.seed, kNoise));

  auto record = [&](int epoch, double loss) {
    result.trajectory.push_back({epoch, evaluate_agents(params, graphs, need), loss});
    if (sink) sink(result.trajectory.back(), params);
  };
  {
    Rng probe(mix_seed(cfg.seed, kProbe));
    record(0, mean_loss(params, graphs, data.train, cfg, probe));
  }

  std::vector<std::size_t> order(data.train.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::vector<GameInstance> batch;
  const std::size_t bs = static_cast<std::size_t>(cfg.batch_size);
  for (int epoch = 1; epoch <= cfg.epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[shuffle_rng.index(i)]);
    }
    double total = 0.0;
    for (std::size_t start = 0; start < order.size(); start += bs) {
      const std::size_t len = std::min(bs, order.size() - start);
      batch.clear();
      for (std::size_t k = 0; k < len; ++k) batch.push_back(data.train[order[start + k]]);
      const auto noise = draw_noise(len, cfg.vocab_size, noise_rng);
      total += batch_loss_and_grad(params, graphs, batch, noise, cfg.gumbel_temperature, grad) *
               static_cast<double>(len);
      adam.step(params, grad);
    }
    if (epoch % cfg.record_every == 0 || epoch == cfg.epochs) {
      record(epoch, total / static_cast<double>(order.size()));
    }
  }
  return result;
}

std::size_t select_checkpoint(const std::vector<TrajectoryRecord>& trajectory, double target_accuracy) {
  if (trajectory.empty()) throw ValidationError("select_checkpoint: empty trajectory");
  std::size_t best = 0;
  double best_gap = std::abs(trajectory[0].eval.average.accuracy - target_accuracy);
  for (std::size_t i = 1; i < trajectory.size(); ++i) {
    const double gap = std::abs(trajectory[i].eval.average.accuracy - target_accuracy);
    const bool earlier = trajectory[i].epoch < trajectory[best].epoch;
    if (gap < best_gap || (gap == best_gap && earlier)) {
      best = i;
      best_gap = gap;
    }
  }
  return best;
}

}  // namespace lexopt::game
