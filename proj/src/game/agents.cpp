#include "lexopt/game/agents.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "lexopt/error.hpp"

namespace lexopt::game {
namespace {

constexpr std::size_t kEgo = kin::kEgoIndex;

Vec softmax(const Vec& x) {
  Vec e = (x.array() - x.maxCoeff()).exp();
  return e / e.sum();
}

// Forward state of one agent pair on one ego graph.
struct GraphState {
  RgcnTape speaker_tape;
  RgcnTape listener_tape;
  Mat speaker_nodes;   // n x d
  Mat listener_nodes;  // n x d
  Mat projected;       // n x d_h, row i = W v_i
  Mat d_speaker_nodes;
  Mat d_projected;
  bool active = false;
};

double run_batch(const AgentParams& params, const GameGraphs& graphs,
                 std::span<const GameInstance> batch, std::span<const Vec> noise,
                 double temperature, AgentParams* grad) {
  if (batch.empty()) throw ValidationError("empty batch");
  if (noise.size() != batch.size()) throw ValidationError("one noise vector per instance required");
  const int d = params.dims.embedding_dim;
  const int layers = params.dims.layers;
  const double scale = 1.0 / static_cast<double>(batch.size());

  std::array<GraphState, 2> states;
  auto state_of = [&](kin::EgoIdentity ego) -> GraphState& {
    return states[ego == kin::EgoIdentity::kBob ? 0 : 1];
  };
  for (const auto& inst : batch) {
    GraphState& st = state_of(inst.ego);
    if (st.active) continue;
    const GraphOperator& g = graphs.of(inst.ego);
    st.speaker_nodes = rgcn_forward(params.speaker.gnn, g, layers, grad ? &st.speaker_tape : nullptr);
    st.listener_nodes = rgcn_forward(params.listener.gnn, g, layers, grad ? &st.listener_tape : nullptr);
    st.projected = st.listener_nodes * params.listener.bilinear.transpose();
    if (grad) {
      st.d_speaker_nodes = Mat::Zero(st.speaker_nodes.rows(), st.speaker_nodes.cols());
      st.d_projected = Mat::Zero(st.projected.rows(), st.projected.cols());
    }
    st.active = true;
  }

  double total = 0.0;
  Vec z(2 * d);
  for (std::size_t k = 0; k < batch.size(); ++k) {
    const GameInstance& inst = batch[k];
    GraphState& st = state_of(inst.ego);
    z.head(d) = st.speaker_nodes.row(kEgo).transpose();
    z.tail(d) = st.speaker_nodes.row(static_cast<Eigen::Index>(inst.target)).transpose();
    const Vec hid = params.speaker.w_hid * z;
    const Vec scores = params.speaker.w_lex * hid;
    const Vec message = gumbel_softmax(scores, noise[k], temperature);
    const Vec e = params.listener.embed.transpose() * message;

    const auto candidates = inst.candidates();
    Vec cand_scores(static_cast<Eigen::Index>(candidates.size()));
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      cand_scores(static_cast<Eigen::Index>(c)) =
          st.projected.row(static_cast<Eigen::Index>(candidates[c])).dot(e);
    }
    const double m = cand_scores.maxCoeff();
    const double lse = m + std::log((cand_scores.array() - m).exp().sum());
    total += lse - cand_scores(0);
    if (!grad) continue;

    // Backward through the listener head.
    Vec d_cand = (cand_scores.array() - lse).exp().matrix();
    d_cand(0) -= 1.0;
    d_cand *= scale;
    Vec d_e = Vec::Zero(e.size());
    for (std::size_t c = 0; c < candidates.size(); ++c) {
      const auto row = static_cast<Eigen::Index>(candidates[c]);
      const double g = d_cand(static_cast<Eigen::Index>(c));
      st.d_projected.row(row) += g * e.transpose();
      d_e += g * st.projected.row(row).transpose();
    }
    grad->listener.embed.noalias() += message * d_e.transpose();
    const Vec d_message = params.listener.embed * d_e;

    // Gumbel-Softmax relaxation with the noise held fixed.
    const Vec d_scores = message.cwiseProduct((d_message.array() - message.dot(d_message)).matrix()) / temperature;
    grad->speaker.w_lex.noalias() += d_scores * hid.transpose();
    const Vec d_hid = params.speaker.w_lex.transpose() * d_scores;
    grad->speaker.w_hid.noalias() += d_hid * z.transpose();
    const Vec d_z = params.speaker.w_hid.transpose() * d_hid;
    st.d_speaker_nodes.row(kEgo) += d_z.head(d).transpose();
    st.d_speaker_nodes.row(static_cast<Eigen::Index>(inst.target)) += d_z.tail(d).transpose();
  }

  if (grad) {
    for (std::size_t s = 0; s < states.size(); ++s) {
      GraphState& st = states[s];
      if (!st.active) continue;
      const GraphOperator& g = graphs.of(s == 0 ? kin::EgoIdentity::kBob : kin::EgoIdentity::kAlice);
      grad->listener.bilinear.noalias() += st.d_projected.transpose() * st.listener_nodes;
      const Mat d_listener_nodes = st.d_projected * params.listener.bilinear;
      rgcn_backward(params.listener.gnn, g, st.listener_tape, d_listener_nodes, grad->listener.gnn);
      rgcn_backward(params.speaker.gnn, g, st.speaker_tape, st.d_speaker_nodes, grad->speaker.gnn);
    }
  }
  return total * scale;
}

}  // namespace

GameGraphs GameGraphs::build(bool pruned) {
  auto make = [&](kin::EgoIdentity ego) {
    auto g = kin::build_kinship_graph(ego);
    return GraphOperator::from_graph(pruned ? kin::prune_graph(g) : g);
  };
  return {make(kin::EgoIdentity::kBob), make(kin::EgoIdentity::kAlice)};
}

Vec speaker_scores(const SpeakerParams& params, const Mat& nodes, std::size_t ego, std::size_t target) {
  const Eigen::Index d = nodes.cols();
  Vec z(2 * d);
  z.head(d) = nodes.row(static_cast<Eigen::Index>(ego)).transpose();
  z.tail(d) = nodes.row(static_cast<Eigen::Index>(target)).transpose();
  return params.w_lex * (params.w_hid * z);
}

Vec gumbel_softmax(const Vec& scores, const Vec& noise, double temperature) {
  if (noise.size() != scores.size()) throw ValidationError("gumbel_softmax: noise size mismatch");
  return softmax((scores + noise) / temperature);
}

Message speaker_forward(const AgentParams& params, const GraphOperator& graph, std::size_t ego,
                        std::size_t target, double temperature, SpeakerMode mode, Rng* rng) {
  if (ego == target) throw ValidationError("speaker_forward: target must differ from ego");
  const Mat nodes = rgcn_forward(params.speaker.gnn, graph, params.dims.layers);
  const Vec scores = speaker_scores(params.speaker, nodes, ego, target);
  Message msg;
  if (mode == SpeakerMode::kEval) {
    Eigen::Index best = 0;
    scores.maxCoeff(&best);
    msg.token = static_cast<int>(best);
    msg.distribution = Vec::Zero(scores.size());
    msg.distribution(best) = 1.0;
    return msg;
  }
  if (rng == nullptr) throw ValidationError("speaker_forward: train mode needs a random stream");
  Vec noise(scores.size());
  for (Eigen::Index i = 0; i < noise.size(); ++i) noise(i) = rng->gumbel();
  msg.distribution = gumbel_softmax(scores, noise, temperature);
  return msg;
}

Vec listener_forward(const AgentParams& params, const GraphOperator& graph, const Vec& message) {
  if (message.size() != params.listener.embed.rows()) {
    throw ValidationError("listener_forward: message size does not match vocabulary");
  }
  const Mat nodes = rgcn_forward(params.listener.gnn, graph, params.dims.layers);
  const Vec e = params.listener.embed.transpose() * message;
  return nodes * (params.listener.bilinear.transpose() * e);
}

double game_loss(const Vec& scores, std::size_t target, std::span<const std::size_t> candidates) {
  bool found = false;
  double m = -std::numeric_limits<double>::infinity();
  for (std::size_t c : candidates) {
    if (c >= static_cast<std::size_t>(scores.size())) throw ValidationError("game_loss: candidate out of range");
    found = found || c == target;
    m = std::max(m, scores(static_cast<Eigen::Index>(c)));
  }
  if (!found) throw ValidationError("game_loss: target is not among the candidates");
  double sum = 0.0;
  for (std::size_t c : candidates) sum += std::exp(scores(static_cast<Eigen::Index>(c)) - m);
  return m + std::log(sum) - scores(static_cast<Eigen::Index>(target));
}

double batch_loss(const AgentParams& params, const GameGraphs& graphs,
                  std::span<const GameInstance> batch, std::span<const Vec> noise, double temperature) {
  return run_batch(params, graphs, batch, noise, temperature, nullptr);
}

double batch_loss_and_grad(const AgentParams& params, const GameGraphs& graphs,
                           std::span<const GameInstance> batch, std::span<const Vec> noise,
                           double temperature, AgentParams& grad) {
  if (!(grad.dims == params.dims)) grad = AgentParams::zeros(params.dims);
  grad.set_zero();
  return run_batch(params, graphs, batch, noise, temperature, &grad);
}

}  // namespace lexopt::game
