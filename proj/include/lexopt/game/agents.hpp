#pragma once

#include <optional>
#include <span>
#include <vector>

#include "lexopt/game/dataset.hpp"
#include "lexopt/game/params.hpp"
#include "lexopt/game/rgcn.hpp"

namespace lexopt::game {

/// The two graphs agents can see, one per ego identity.
struct GameGraphs {
  GraphOperator bob;
  GraphOperator alice;

  static GameGraphs build(bool pruned);
  const GraphOperator& of(kin::EgoIdentity ego) const {
    return ego == kin::EgoIdentity::kBob ? bob : alice;
  }
};

enum class SpeakerMode { kTrain, kEval };

struct Message {
  Vec distribution;          // relaxed one-hot over the vocabulary
  std::optional<int> token;  // set in eval mode
};

/// Token logits W_lex W_hid [h_ego; h_target].
Vec speaker_scores(const SpeakerParams& params, const Mat& node_embeddings, std::size_t ego,
                   std::size_t target);

/// softmax((scores + noise) / temperature).
Vec gumbel_softmax(const Vec& scores, const Vec& noise, double temperature);

/// Train mode samples Gumbel noise from `rng` and returns the relaxed message;
/// eval mode returns the argmax token as an exact one-hot and ignores `rng`.
Message speaker_forward(const AgentParams& params, const GraphOperator& graph, std::size_t ego,
                        std::size_t target, double temperature, SpeakerMode mode, Rng* rng);

/// Bilinear scores e_w^T W v_i for every node, with e_w = E^T message.
Vec listener_forward(const AgentParams& params, const GraphOperator& graph, const Vec& message);

/// Cross-entropy of the target among the candidates, via log-sum-exp.
double game_loss(const Vec& scores, std::size_t target, std::span<const std::size_t> candidates);

/// Mean loss of a batch under fixed per-instance Gumbel noise vectors.
double batch_loss(const AgentParams& params, const GameGraphs& graphs,
                  std::span<const GameInstance> batch, std::span<const Vec> noise,
                  double temperature);

/// Mean batch loss and its gradient with respect to every parameter tensor.
/// The Gumbel noise is a constant of the computation.
double batch_loss_and_grad(const AgentParams& params, const GameGraphs& graphs,
                           std::span<const GameInstance> batch, std::span<const Vec> noise,
                           double temperature, AgentParams& grad);

}  // namespace lexopt::game
