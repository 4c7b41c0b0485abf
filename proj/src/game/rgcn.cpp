#include "lexopt/game/rgcn.hpp"

#include "lexopt/error.hpp"

namespace lexopt::game {
namespace {

SparseRows mean_operator(Eigen::Index n, const std::vector<std::pair<int, int>>& dst_src) {
  std::vector<int> in_degree(static_cast<std::size_t>(n), 0);
  for (const auto& [dst, src] : dst_src) ++in_degree[static_cast<std::size_t>(dst)];
  std::vector<Eigen::Triplet<double>> triplets;
  for (const auto& [dst, src] : dst_src) {
    triplets.emplace_back(dst, src, 1.0 / in_degree[static_cast<std::size_t>(dst)]);
  }
  SparseRows a(n, n);
  a.setFromTriplets(triplets.begin(), triplets.end());
  return a;
}

const Mat& relation_weight(const GraphNetParams& p, std::size_t r) {
  return r == 0 ? p.w_parent : p.w_child;
}

Mat& relation_weight(GraphNetParams& p, std::size_t r) { return r == 0 ? p.w_parent : p.w_child; }

}  // namespace

GraphOperator GraphOperator::from_graph(const kin::KinshipGraph& graph) {
  const auto n = static_cast<Eigen::Index>(graph.num_nodes());
  Mat features(n, static_cast<Eigen::Index>(kin::kFeatureDim));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index f = 0; f < features.cols(); ++f) {
      features(i, f) = graph.features()[static_cast<std::size_t>(i)][static_cast<std::size_t>(f)];
    }
  }
  std::vector<std::array<int, 3>> edges;
  for (const auto& e : graph.edges()) {
    edges.push_back({static_cast<int>(e.src), static_cast<int>(e.dst), static_cast<int>(e.relation)});
  }
  return from_edges(std::move(features), edges);
}

GraphOperator GraphOperator::from_edges(Mat features, const std::vector<std::array<int, 3>>& edges) {
  const Eigen::Index n = features.rows();
  std::array<std::vector<std::pair<int, int>>, kin::kNumRelations> by_relation;
  for (const auto& [src, dst, rel] : edges) {
    if (src < 0 || dst < 0 || src >= n || dst >= n || rel < 0 ||
        rel >= static_cast<int>(kin::kNumRelations)) {
      throw ValidationError("graph operator: edge out of range");
    }
    by_relation[static_cast<std::size_t>(rel)].emplace_back(dst, src);
  }
  GraphOperator op;
  op.features = std::move(features);
  for (std::size_t r = 0; r < kin::kNumRelations; ++r) {
    op.mean_adjacency[r] = mean_operator(n, by_relation[r]);
  }
  return op;
}

Mat rgcn_forward(const GraphNetParams& params, const GraphOperator& graph, int layers,
                 RgcnTape* tape) {
  if (graph.features.cols() != params.w_in.cols()) {
    throw ValidationError("rgcn_forward: feature width does not match input projection");
  }
  Mat h = graph.features * params.w_in.transpose();
  if (tape) {
    tape->inputs.clear();
    tape->aggregated.clear();
    tape->pre.clear();
  }
  for (int k = 0; k < layers; ++k) {
    std::array<Mat, kin::kNumRelations> agg;
    Mat pre = h * params.w_self.transpose();
    for (std::size_t r = 0; r < kin::kNumRelations; ++r) {
      agg[r] = graph.mean_adjacency[r] * h;
      pre.noalias() += agg[r] * relation_weight(params, r).transpose();
    }
    if (tape) {
      tape->inputs.push_back(h);
      tape->aggregated.push_back(std::move(agg));
      tape->pre.push_back(pre);
    }
    h = (k + 1 < layers) ? Mat(pre.cwiseMax(0.0)) : pre;
  }
  return h;
}

void rgcn_backward(const GraphNetParams& params, const GraphOperator& graph, const RgcnTape& tape,
                   const Mat& d_output, GraphNetParams& grad) {
  const int layers = static_cast<int>(tape.pre.size());
  Mat d_h = d_output;
  for (int k = layers - 1; k >= 0; --k) {
    const auto ks = static_cast<std::size_t>(k);
    Mat d_pre = d_h;
    if (k + 1 < layers) d_pre = d_pre.cwiseProduct((tape.pre[ks].array() > 0.0).cast<double>().matrix());
    grad.w_self.noalias() += d_pre.transpose() * tape.inputs[ks];
    Mat d_in = d_pre * params.w_self;
    for (std::size_t r = 0; r < kin::kNumRelations; ++r) {
      relation_weight(grad, r).noalias() += d_pre.transpose() * tape.aggregated[ks][r];
      const Mat d_agg = d_pre * relation_weight(params, r);
      d_in.noalias() += graph.mean_adjacency[r].transpose() * d_agg;
    }
    d_h = std::move(d_in);
  }
  grad.w_in.noalias() += d_h.transpose() * graph.features;
}

}  // namespace lexopt::game
