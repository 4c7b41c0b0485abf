#include "lexopt/game/params.hpp"

#include <cmath>

namespace lexopt::game {
namespace {

GraphNetParams gnn_zeros(const ModelDims& d) {
  return {Mat::Zero(d.embedding_dim, d.feature_dim), Mat::Zero(d.embedding_dim, d.embedding_dim),
          Mat::Zero(d.embedding_dim, d.embedding_dim), Mat::Zero(d.embedding_dim, d.embedding_dim)};
}

void fill_xavier(Mat& m, Rng& rng) {
  const double a = std::sqrt(6.0 / static_cast<double>(m.rows() + m.cols()));
  // Column-major fill order keeps the draw sequence independent of Eigen internals.
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = (2.0 * rng.uniform() - 1.0) * a;
  }
}

}  // namespace

AgentParams AgentParams::zeros(const ModelDims& d) {
  AgentParams p;
  p.dims = d;
  p.speaker = {gnn_zeros(d), Mat::Zero(d.hidden_dim, 2 * d.embedding_dim),
               Mat::Zero(d.vocab_size, d.hidden_dim)};
  p.listener = {gnn_zeros(d), Mat::Zero(d.vocab_size, d.hidden_dim),
                Mat::Zero(d.hidden_dim, d.embedding_dim)};
  return p;
}

AgentParams AgentParams::xavier(const ModelDims& d, Rng& rng) {
  AgentParams p = zeros(d);
  for (auto& [name, m] : p.tensors()) fill_xavier(*m, rng);
  return p;
}

std::vector<std::pair<std::string, Mat*>> AgentParams::tensors() {
  return {{"speaker.gnn.w_in", &speaker.gnn.w_in},
          {"speaker.gnn.w_self", &speaker.gnn.w_self},
          {"speaker.gnn.w_parent", &speaker.gnn.w_parent},
          {"speaker.gnn.w_child", &speaker.gnn.w_child},
          {"speaker.w_hid", &speaker.w_hid},
          {"speaker.w_lex", &speaker.w_lex},
          {"listener.gnn.w_in", &listener.gnn.w_in},
          {"listener.gnn.w_self", &listener.gnn.w_self},
          {"listener.gnn.w_parent", &listener.gnn.w_parent},
          {"listener.gnn.w_child", &listener.gnn.w_child},
          {"listener.embed", &listener.embed},
          {"listener.bilinear", &listener.bilinear}};
}

std::vector<std::pair<std::string, const Mat*>> AgentParams::tensors() const {
  std::vector<std::pair<std::string, const Mat*>> out;
  for (auto& [name, m] : const_cast<AgentParams*>(this)->tensors()) out.emplace_back(name, m);
  return out;
}

std::size_t AgentParams::num_scalars() const {
  std::size_t n = 0;
  for (const auto& [name, m] : tensors()) n += static_cast<std::size_t>(m->size());
  return n;
}

void AgentParams::set_zero() {
  for (auto& [name, m] : tensors()) m->setZero();
}

}  // namespace lexopt::game
