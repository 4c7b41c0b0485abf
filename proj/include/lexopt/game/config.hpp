#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

namespace lexopt::game {

enum class TargetSampling { kUniform, kNeedWeighted };

/// Referential-game hyper-parameters. Defaults are the main-study settings;
/// JSON keys use the same names as the fields.
struct TrainConfig {
  int embedding_dim = 80;
  int hidden_dim = 20;
  std::string graph_net = "RGCN";
  int graph_net_layers = 3;
  int vocab_size = 128;
  bool graph_pruning = true;
  std::string optimizer = "Adam";
  double learning_rate = 1e-3;
  int batch_size = 50;
  int n_distractors = 5;
  double gumbel_temperature = 1.5;
  int epochs = 500;
  int dataset_size = 10000;
  double train_fraction = 0.8;
  int record_every = 10;
  TargetSampling target_sampling = TargetSampling::kUniform;
  std::uint64_t seed = 0;

  /// Every violated constraint, one message each; empty when valid.
  std::vector<std::string> violations() const;
  /// Throws ValidationError listing all violations.
  void validate() const;
};

nlohmann::json to_json(const TrainConfig& cfg);

/// Starts from defaults and overrides the keys present. Unknown keys and type
/// mismatches are reported together with range violations.
TrainConfig config_from_json(const nlohmann::json& j);

std::string target_sampling_name(TargetSampling s);

}  // namespace lexopt::game
