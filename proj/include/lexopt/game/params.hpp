#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "lexopt/game/rng.hpp"
#include "lexopt/kin/kinship_graph.hpp"

namespace lexopt::game {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

struct ModelDims {
  int feature_dim = static_cast<int>(kin::kFeatureDim);
  int embedding_dim = 80;  // d
  int hidden_dim = 20;     // d_h
  int vocab_size = 128;    // |V|
  int layers = 3;          // applications of the shared relational layer

  friend bool operator==(const ModelDims&, const ModelDims&) = default;
};

/// Input projection plus one relational layer whose parameters are reused by
/// every application.
struct GraphNetParams {
  Mat w_in;      // d x feature_dim
  Mat w_self;    // d x d
  Mat w_parent;  // d x d, messages arriving over parent-of edges
  Mat w_child;   // d x d, messages arriving over child-of edges
};

struct SpeakerParams {
  GraphNetParams gnn;
  Mat w_hid;  // d_h x 2d
  Mat w_lex;  // |V| x d_h
};

struct ListenerParams {
  GraphNetParams gnn;
  Mat embed;     // |V| x d_h, token embeddings
  Mat bilinear;  // d_h x d
};

struct AgentParams {
  ModelDims dims;
  SpeakerParams speaker;
  ListenerParams listener;

  static AgentParams zeros(const ModelDims& dims);
  /// Uniform(-a, a) per matrix with a = sqrt(6 / (rows + cols)).
  static AgentParams xavier(const ModelDims& dims, Rng& rng);

  /// Every tensor with its name, in the fixed order used by the optimizer and
  /// the checkpoint format.
  std::vector<std::pair<std::string, Mat*>> tensors();
  std::vector<std::pair<std::string, const Mat*>> tensors() const;

  std::size_t num_scalars() const;
  void set_zero();
};

}  // namespace lexopt::game
