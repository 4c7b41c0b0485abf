#include "lexopt/game/config.hpp"

#include <set>

#include "lexopt/error.hpp"

namespace lexopt::game {

std::string target_sampling_name(TargetSampling s) {
  return s == TargetSampling::kUniform ? "uniform" : "need-weighted";
}

std::vector<std::string> TrainConfig::violations() const {
  std::vector<std::string> out;
  if (embedding_dim < 1) out.push_back("embedding_dim must be >= 1");
  if (hidden_dim < 1) out.push_back("hidden_dim must be >= 1");
  if (graph_net != "RGCN") out.push_back("graph_net must be \"RGCN\"");
  if (graph_net_layers < 1) out.push_back("graph_net_layers must be >= 1");
  if (vocab_size < 16 || vocab_size > 256) out.push_back("vocab_size must lie in [16, 256]");
  if (optimizer != "Adam") out.push_back("optimizer must be \"Adam\"");
  if (!(learning_rate > 0.0)) out.push_back("learning_rate must be > 0");
  if (batch_size < 1) out.push_back("batch_size must be >= 1");
  if (n_distractors < 1 || n_distractors > 30) out.push_back("n_distractors must lie in [1, 30]");
  if (!(gumbel_temperature > 0.0)) out.push_back("gumbel_temperature must be > 0");
  if (epochs < 0) out.push_back("epochs must be >= 0");
  if (dataset_size < 1) out.push_back("dataset_size must be >= 1");
  if (!(train_fraction > 0.0 && train_fraction <= 1.0)) out.push_back("train_fraction must lie in (0, 1]");
  if (record_every < 1) out.push_back("record_every must be >= 1");
  return out;
}

void TrainConfig::validate() const {
  const auto v = violations();
  if (v.empty()) return;
  std::string msg = "invalid training config:";
  for (const auto& s : v) msg += "\n  - " + s;
  throw ValidationError(msg);
}

nlohmann::json to_json(const TrainConfig& c) {
  return {{"embedding_dim", c.embedding_dim},
          {"hidden_dim", c.hidden_dim},
          {"graph_net", c.graph_net},
          {"graph_net_layers", c.graph_net_layers},
          {"vocab_size", c.vocab_size},
          {"graph_pruning", c.graph_pruning},
          {"optimizer", c.optimizer},
          {"learning_rate", c.learning_rate},
          {"batch_size", c.batch_size},
          {"n_distractors", c.n_distractors},
          {"gumbel_temperature", c.gumbel_temperature},
          {"epochs", c.epochs},
          {"dataset_size", c.dataset_size},
          {"train_fraction", c.train_fraction},
          {"record_every", c.record_every},
          {"target_sampling", target_sampling_name(c.target_sampling)},
          {"seed", c.seed}};
}

TrainConfig config_from_json(const nlohmann::json& j) {
  TrainConfig c;
  std::vector<std::string> errors;
  if (!j.is_object()) throw ValidationError("training config must be a JSON object");

  auto read_int = [&](const char* key, int& field) {
    if (!j.contains(key)) return;
    if (!j[key].is_number_integer()) {
      errors.push_back(std::string(key) + " must be an integer");
      return;
    }
    field = j[key].get<int>();
  };
  auto read_real = [&](const char* key, double& field) {
    if (!j.contains(key)) return;
    if (!j[key].is_number()) {
      errors.push_back(std::string(key) + " must be a number");
      return;
    }
    field = j[key].get<double>();
  };
  auto read_string = [&](const char* key, std::string& field) {
    if (!j.contains(key)) return;
    if (!j[key].is_string()) {
      errors.push_back(std::string(key) + " must be a string");
      return;
    }
    field = j[key].get<std::string>();
  };

  read_int("embedding_dim", c.embedding_dim);
  read_int("hidden_dim", c.hidden_dim);
  read_string("graph_net", c.graph_net);
  read_int("graph_net_layers", c.graph_net_layers);
  read_int("vocab_size", c.vocab_size);
  if (j.contains("graph_pruning")) {
    if (j["graph_pruning"].is_boolean()) {
      c.graph_pruning = j["graph_pruning"].get<bool>();
    } else {
      errors.push_back("graph_pruning must be a boolean");
    }
  }
  read_string("optimizer", c.optimizer);
  read_real("learning_rate", c.learning_rate);
  read_int("batch_size", c.batch_size);
  read_int("n_distractors", c.n_distractors);
  read_real("gumbel_temperature", c.gumbel_temperature);
  read_int("epochs", c.epochs);
  read_int("dataset_size", c.dataset_size);
  read_real("train_fraction", c.train_fraction);
  read_int("record_every", c.record_every);
  if (j.contains("target_sampling")) {
    const auto& v = j["target_sampling"];
    if (v == "uniform") {
      c.target_sampling = TargetSampling::kUniform;
    } else if (v == "need-weighted") {
      c.target_sampling = TargetSampling::kNeedWeighted;
    } else {
      errors.push_back("target_sampling must be \"uniform\" or \"need-weighted\"");
    }
  }
  if (j.contains("seed")) {
    if (j["seed"].is_number_unsigned()) {
      c.seed = j["seed"].get<std::uint64_t>();
    } else {
      errors.push_back("seed must be a non-negative integer");
    }
  }

  static const std::set<std::string> known = {
      "embedding_dim", "hidden_dim",     "graph_net",          "graph_net_layers",
      "vocab_size",    "graph_pruning",  "optimizer",          "learning_rate",
      "batch_size",    "n_distractors",  "gumbel_temperature", "epochs",
      "dataset_size",  "train_fraction", "record_every",       "target_sampling",
      "seed"};
  for (const auto& [key, value] : j.items()) {
    if (!known.contains(key)) errors.push_back("unknown key \"" + key + "\"");
  }

  if (errors.empty()) {
    errors = c.violations();
  } else {
    for (auto& v : c.violations()) errors.push_back(std::move(v));
  }
  if (!errors.empty()) {
    std::string msg = "invalid training config:";
    for (const auto& s : errors) msg += "\n  - " + s;
    throw ValidationError(msg);
  }
  return c;
}

}  // namespace lexopt::game
