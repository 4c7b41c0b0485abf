#pragma once

#include <vector>

#include "lexopt/game/agents.hpp"
#include "lexopt/info/measures.hpp"

namespace lexopt::game {

struct EgoEvaluation {
  kin::EgoIdentity ego;
  info::NamingSystem system;  // argmax encoder, listener softmax decoder
  info::TradeoffPoint point;
  /// Share of the 32 targets the listener's argmax over all 32 relatives
  /// identifies after hearing the speaker's argmax token.
  double strict_accuracy = 0.0;
};

struct Evaluation {
  std::vector<EgoEvaluation> per_ego;  // Bob, Alice
  info::TradeoffPoint average;
  double strict_accuracy = 0.0;  // over all 2 x 32 evaluation pairs
};

/// Evaluates frozen agents on both ego graphs. `need` ranges over the 32
/// non-ego relatives in canonical order. Pure; safe to call concurrently.
Evaluation evaluate_agents(const AgentParams& params, const GameGraphs& graphs,
                           const info::Distribution& need);

}  // namespace lexopt::game
