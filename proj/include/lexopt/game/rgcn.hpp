#pragma once

#include <array>
#include <vector>

#include <Eigen/Sparse>

#include "lexopt/game/params.hpp"
#include "lexopt/kin/kinship_graph.hpp"

namespace lexopt::game {

using SparseRows = Eigen::SparseMatrix<double, Eigen::RowMajor>;

/// Graph inputs of the relational network: node features and, per relation,
/// the mean-aggregation operator A_r with A_r(i, j) = 1/|N_r(i)| for every
/// edge j -> i of that relation.
struct GraphOperator {
  Mat features;  // n x feature_dim
  std::array<SparseRows, kin::kNumRelations> mean_adjacency;

  static GraphOperator from_graph(const kin::KinshipGraph& graph);
  /// Generic constructor for small hand-built fixtures. `edges` holds
  /// (src, dst, relation index) triples.
  static GraphOperator from_edges(Mat features,
                                  const std::vector<std::array<int, 3>>& edges);

  Eigen::Index num_nodes() const { return features.rows(); }
};

/// Intermediate values kept for the backward pass.
struct RgcnTape {
  std::vector<Mat> inputs;  // input of application k (after ReLU for k > 0)
  std::vector<std::array<Mat, kin::kNumRelations>> aggregated;  // A_r * inputs[k]
  std::vector<Mat> pre;     // pre-activation output of application k
};

/// H_0 = X W_in^T, then `layers` applications of
///   pre = H W_self^T + sum_r (A_r H) W_r^T,
/// with ReLU between applications and none after the last. Returns n x d.
Mat rgcn_forward(const GraphNetParams& params, const GraphOperator& graph, int layers,
                 RgcnTape* tape = nullptr);

/// Accumulates parameter gradients into `grad` given dLoss/dOutput.
void rgcn_backward(const GraphNetParams& params, const GraphOperator& graph, const RgcnTape& tape,
                   const Mat& d_output, GraphNetParams& grad);

}  // namespace lexopt::game
