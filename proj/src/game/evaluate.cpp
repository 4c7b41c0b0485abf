#include "lexopt/game/evaluate.hpp"

#include <cmath>
#include <string>

#include "lexopt/error.hpp"

namespace lexopt::game {
namespace {

constexpr std::size_t kN = kin::kNumRelatives;

EgoEvaluation evaluate_ego(const AgentParams& params, const GraphOperator& graph,
                           kin::EgoIdentity ego, const info::Distribution& need) {
  const int vocab = params.dims.vocab_size;
  const Mat speaker_nodes = rgcn_forward(params.speaker.gnn, graph, params.dims.layers);
  const Mat listener_nodes = rgcn_forward(params.listener.gnn, graph, params.dims.layers);

  // Speaker: argmax token per target.
  std::vector<int> token(kN);
  std::vector<double> enc(kN * static_cast<std::size_t>(vocab), 0.0);
  for (std::size_t u = 0; u < kN; ++u) {
    const Vec scores = speaker_scores(params.speaker, speaker_nodes, kin::kEgoIndex, u);
    Eigen::Index best = 0;
    scores.maxCoeff(&best);
    token[u] = static_cast<int>(best);
    enc[u * static_cast<std::size_t>(vocab) + static_cast<std::size_t>(best)] = 1.0;
  }

  // Listener: scores of every token against the 32 relatives, softmax per token.
  const Mat projected = listener_nodes.topRows(kN) * params.listener.bilinear.transpose();  // 32 x d_h
  const Mat scores = params.listener.embed * projected.transpose();                          // |V| x 32
  std::vector<double> dec(static_cast<std::size_t>(vocab) * kN);
  for (int w = 0; w < vocab; ++w) {
    const auto row = scores.row(w);
    const double m = row.maxCoeff();
    double total = 0.0;
    for (std::size_t u = 0; u < kN; ++u) total += std::exp(row(static_cast<Eigen::Index>(u)) - m);
    for (std::size_t u = 0; u < kN; ++u) {
      dec[static_cast<std::size_t>(w) * kN + u] = std::exp(row(static_cast<Eigen::Index>(u)) - m) / total;
    }
  }

  std::size_t hits = 0;
  for (std::size_t u = 0; u < kN; ++u) {
    Eigen::Index guess = 0;
    scores.row(token[u]).maxCoeff(&guess);
    hits += static_cast<std::size_t>(guess) == u ? 1 : 0;
  }

  EgoEvaluation out{ego,
                    info::NamingSystem{{}, {}, need,
                                       info::ConditionalDistribution::from_weights(kN, static_cast<std::size_t>(vocab), enc),
                                       info::ConditionalDistribution::from_weights(static_cast<std::size_t>(vocab), kN, dec)},
                    {},
                    static_cast<double>(hits) / static_cast<double>(kN)};
  for (std::size_t u = 0; u < kN; ++u) {
    out.system.object_labels.emplace_back(kin::member_inventory()[u].label);
  }
  for (int w = 0; w < vocab; ++w) out.system.word_labels.push_back("w" + std::to_string(w));
  out.point = info::evaluate_system(out.system);
  return out;
}

}  // namespace

Evaluation evaluate_agents(const AgentParams& params, const GameGraphs& graphs,
                           const info::Distribution& need) {
  if (need.size() != kN) throw ValidationError("need distribution must cover the 32 relatives");
  Evaluation ev;
  ev.per_ego.push_back(evaluate_ego(params, graphs.bob, kin::EgoIdentity::kBob, need));
  ev.per_ego.push_back(evaluate_ego(params, graphs.alice, kin::EgoIdentity::kAlice, need));
  ev.average = info::average({ev.per_ego[0].point, ev.per_ego[1].point});
  ev.strict_accuracy = 0.5 * (ev.per_ego[0].strict_accuracy + ev.per_ego[1].strict_accuracy);
  return ev;
}

}  // namespace lexopt::game
