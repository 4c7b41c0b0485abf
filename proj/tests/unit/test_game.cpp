#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "lexopt/error.hpp"
#include "lexopt/game/adam.hpp"
#include "lexopt/game/agents.hpp"
#include "lexopt/game/checkpoint.hpp"
#include "lexopt/game/dataset.hpp"
#include "lexopt/game/evaluate.hpp"
#include "lexopt/game/train.hpp"

using namespace lexopt;
using namespace lexopt::game;

namespace {

ModelDims small_dims(int d, int dh, int vocab, int layers) {
  ModelDims dims;
  dims.embedding_dim = d;
  dims.hidden_dim = dh;
  dims.vocab_size = vocab;
  dims.layers = layers;
  return dims;
}

Mat random_mat(Rng& rng, Eigen::Index r, Eigen::Index c) {
  Mat m(r, c);
  for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = 2.0 * rng.uniform() - 1.0;
  return m;
}

GraphNetParams random_gnn(Rng& rng, int feat, int d) {
  return {random_mat(rng, d, feat), random_mat(rng, d, d), random_mat(rng, d, d), random_mat(rng, d, d)};
}

// Dense reference: explicit neighbour loops, no sparse algebra.
Mat rgcn_reference(const GraphNetParams& p, const Mat& x, const std::vector<std::array<int, 3>>& edges,
                   int layers) {
  Mat h = x * p.w_in.transpose();
  const Eigen::Index n = x.rows();
  for (int k = 0; k < layers; ++k) {
    Mat out = h * p.w_self.transpose();
    for (int r = 0; r < 2; ++r) {
      const Mat& w = r == 0 ? p.w_parent : p.w_child;
      for (Eigen::Index i = 0; i < n; ++i) {
        Vec sum = Vec::Zero(h.cols());
        int count = 0;
        for (const auto& [src, dst, rel] : edges) {
          if (dst == i && rel == r) {
            sum += h.row(src).transpose();
            ++count;
          }
        }
        if (count > 0) out.row(i) += (w * (sum / count)).transpose();
      }
    }
    h = (k + 1 < layers) ? Mat(out.cwiseMax(0.0)) : out;
  }
  return h;
}

std::vector<Vec> gumbel_noise(Rng& rng, std::size_t n, int vocab) {
  std::vector<Vec> out;
  for (std::size_t i = 0; i < n; ++i) {
    Vec v(vocab);
    for (int k = 0; k < vocab; ++k) v(k) = rng.gumbel();
    out.push_back(v);
  }
  return out;
}

TrainConfig tiny_config() {
  TrainConfig cfg;
  cfg.embedding_dim = 6;
  cfg.hidden_dim = 4;
  cfg.vocab_size = 16;
  cfg.graph_net_layers = 2;
  cfg.dataset_size = 60;
  cfg.batch_size = 16;
  cfg.epochs = 5;
  cfg.record_every = 2;
  cfg.seed = 11;
  return cfg;
}

bool params_equal(const AgentParams& a, const AgentParams& b) {
  const auto ta = a.tensors();
  const auto tb = b.tensors();
  if (ta.size() != tb.size()) return false;
  for (std::size_t i = 0; i < ta.size(); ++i) {
    if (ta[i].first != tb[i].first || *ta[i].second != *tb[i].second) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("game") {

TEST_CASE("rgcn hand-computed two-node fixture") {
  // Node 1 hears node 0 over parent-of; node 0 hears node 1 over child-of.
  const std::vector<std::array<int, 3>> edges{{0, 1, 0}, {1, 0, 1}};
  Mat x(2, 1);
  x << 1, 2;
  const auto op = GraphOperator::from_edges(x, edges);
  GraphNetParams p{Mat::Constant(1, 1, 1.0), Mat::Constant(1, 1, 2.0), Mat::Constant(1, 1, 3.0),
                   Mat::Constant(1, 1, 5.0)};
  Mat h = rgcn_forward(p, op, 1);
  CHECK(h(0, 0) == 12.0);
  CHECK(h(1, 0) == 7.0);
  h = rgcn_forward(p, op, 2);
  CHECK(h(0, 0) == 59.0);
  CHECK(h(1, 0) == 50.0);

  // Negative pre-activations: kept after the last application, clipped between.
  p.w_in(0, 0) = -1.0;
  h = rgcn_forward(p, op, 1);
  CHECK(h(0, 0) == -12.0);
  CHECK(h(1, 0) == -7.0);
  h = rgcn_forward(p, op, 2);
  CHECK(h(0, 0) == 0.0);
  CHECK(h(1, 0) == 0.0);
}

TEST_CASE("rgcn mean aggregation and isolated nodes") {
  // Node 2 has two parent-of senders; node 3 has no neighbours.
  const std::vector<std::array<int, 3>> edges{{0, 2, 0}, {1, 2, 0}};
  Mat x = Mat::Identity(4, 4);
  const auto op = GraphOperator::from_edges(x, edges);
  CHECK(op.mean_adjacency[0].coeff(2, 0) == 0.5);
  CHECK(op.mean_adjacency[0].coeff(2, 1) == 0.5);
  CHECK(op.mean_adjacency[1].nonZeros() == 0);
  Rng rng(1);
  const auto p = random_gnn(rng, 4, 3);
  const Mat h = rgcn_forward(p, op, 1);
  const Mat expect_isolated = (x.row(3) * p.w_in.transpose()) * p.w_self.transpose();
  CHECK((h.row(3) - expect_isolated).norm() < 1e-12);
  CHECK_THROWS_AS(GraphOperator::from_edges(x, {{0, 9, 0}}), ValidationError);
}

TEST_CASE("rgcn matches the dense reference on the kinship graphs") {
  Rng rng(2);
  const auto p = random_gnn(rng, static_cast<int>(kin::kFeatureDim), 5);
  for (bool pruned : {false, true}) {
    auto g = kin::build_kinship_graph(kin::EgoIdentity::kAlice);
    if (pruned) g = kin::prune_graph(g);
    const auto op = GraphOperator::from_graph(g);
    std::vector<std::array<int, 3>> edges;
    for (const auto& e : g.edges()) {
      edges.push_back({static_cast<int>(e.src), static_cast<int>(e.dst), static_cast<int>(e.relation)});
    }
    for (int layers : {1, 3}) {
      const Mat got = rgcn_forward(p, op, layers);
      const Mat want = rgcn_reference(p, op.features, edges, layers);
      CHECK((got - want).lpNorm<Eigen::Infinity>() < 1e-10);
    }
  }
}

TEST_CASE("rgcn is permutation equivariant") {
  Rng rng(3);
  const int n = 7;
  Mat x = random_mat(rng, n, 4);
  std::vector<std::array<int, 3>> edges{{0, 1, 0}, {1, 0, 1}, {2, 3, 0}, {4, 3, 0}, {3, 5, 1}, {6, 2, 1}};
  std::vector<int> perm{3, 6, 0, 5, 1, 2, 4};  // old node i becomes perm[i]
  Mat xp(n, 4);
  for (int i = 0; i < n; ++i) xp.row(perm[i]) = x.row(i);
  std::vector<std::array<int, 3>> edges_p;
  for (const auto& [s, d, r] : edges) edges_p.push_back({perm[s], perm[d], r});
  const auto p = random_gnn(rng, 4, 3);
  const Mat h = rgcn_forward(p, GraphOperator::from_edges(x, edges), 3);
  const Mat hp = rgcn_forward(p, GraphOperator::from_edges(xp, edges_p), 3);
  for (int i = 0; i < n; ++i) CHECK((h.row(i) - hp.row(perm[i])).norm() < 1e-12);
}

TEST_CASE("relational parameters are shared across applications") {
  const auto one = AgentParams::zeros(small_dims(8, 4, 16, 1));
  const auto five = AgentParams::zeros(small_dims(8, 4, 16, 5));
  CHECK(one.num_scalars() == five.num_scalars());
  const auto defaults = AgentParams::zeros(ModelDims{});
  const std::size_t gnn = 80 * 12 + 3 * 80 * 80;
  CHECK(defaults.num_scalars() == 2 * gnn + 20 * 160 + 128 * 20 + 128 * 20 + 20 * 80);
}

TEST_CASE("xavier initialization bounds") {
  Rng rng(4);
  const auto p = AgentParams::xavier(ModelDims{}, rng);
  for (const auto& [name, m] : p.tensors()) {
    const double a = std::sqrt(6.0 / static_cast<double>(m->rows() + m->cols()));
    CHECK_MESSAGE(m->cwiseAbs().maxCoeff() <= a, name);
    CHECK_MESSAGE(m->cwiseAbs().maxCoeff() > 0.5 * a, name);
  }
}

TEST_CASE("gumbel softmax") {
  Vec s(3);
  s << 1.0, 2.0, -1.0;
  const Vec y = gumbel_softmax(s, Vec::Zero(3), 2.0);
  const Vec e = (s / 2.0).array().exp();
  CHECK((y - e / e.sum()).norm() < 1e-15);
  Vec big(2);
  big << 1000.0, 0.0;
  const Vec yb = gumbel_softmax(big, Vec::Zero(2), 1.0);
  CHECK(yb(0) == 1.0);
  CHECK(yb(1) == 0.0);
}

TEST_CASE("speaker modes") {
  Rng rng(5);
  const auto dims = small_dims(8, 4, 16, 3);
  const auto p = AgentParams::xavier(dims, rng);
  const auto graphs = GameGraphs::build(true);
  const auto& g = graphs.bob;
  const Mat nodes = rgcn_forward(p.speaker.gnn, g, dims.layers);
  const Vec scores = speaker_scores(p.speaker, nodes, kin::kEgoIndex, 4);
  Vec joined(2 * dims.embedding_dim);
  joined << nodes.row(kin::kEgoIndex).transpose(), nodes.row(4).transpose();
  CHECK((scores - p.speaker.w_lex * (p.speaker.w_hid * joined)).norm() < 1e-12);

  Rng noise(6);
  const auto train_msg = speaker_forward(p, g, kin::kEgoIndex, 4, 1.5, SpeakerMode::kTrain, &noise);
  CHECK_FALSE(train_msg.token.has_value());
  CHECK(train_msg.distribution.sum() == doctest::Approx(1.0));
  CHECK(train_msg.distribution.minCoeff() >= 0.0);

  const auto eval_a = speaker_forward(p, g, kin::kEgoIndex, 4, 1.5, SpeakerMode::kEval, nullptr);
  const auto eval_b = speaker_forward(p, g, kin::kEgoIndex, 4, 1.5, SpeakerMode::kEval, &noise);
  REQUIRE(eval_a.token.has_value());
  Eigen::Index best;
  scores.maxCoeff(&best);
  CHECK(*eval_a.token == best);
  CHECK(eval_a.distribution == eval_b.distribution);
  CHECK(eval_a.distribution.sum() == 1.0);
  CHECK(eval_a.distribution(best) == 1.0);

  CHECK_THROWS_AS(speaker_forward(p, g, kin::kEgoIndex, kin::kEgoIndex, 1.5, SpeakerMode::kEval, nullptr),
                  ValidationError);
  CHECK_THROWS(speaker_forward(p, g, kin::kEgoIndex, 4, 1.5, SpeakerMode::kTrain, nullptr));
}

TEST_CASE("listener bilinear scores") {
  Rng rng(7);
  const auto dims = small_dims(5, 3, 16, 2);
  auto p = AgentParams::xavier(dims, rng);
  const auto graphs = GameGraphs::build(false);
  const Mat nodes = rgcn_forward(p.listener.gnn, graphs.alice, dims.layers);
  Vec msg = Vec::Zero(16);
  for (int k = 0; k < 16; ++k) msg(k) = rng.uniform();
  msg /= msg.sum();
  const Vec got = listener_forward(p, graphs.alice, msg);
  REQUIRE(got.size() == 33);
  for (Eigen::Index i = 0; i < nodes.rows(); ++i) {
    double want = 0.0;
    for (int a = 0; a < dims.hidden_dim; ++a) {
      double e = 0.0;
      for (int w = 0; w < 16; ++w) e += msg(w) * p.listener.embed(w, a);
      for (int b = 0; b < dims.embedding_dim; ++b) want += e * p.listener.bilinear(a, b) * nodes(i, b);
    }
    CHECK(got(i) == doctest::Approx(want).epsilon(1e-12));
  }

  // A one-hot message selects one embedding row.
  Vec onehot = Vec::Zero(16);
  onehot(3) = 1.0;
  const Vec direct = nodes * (p.listener.bilinear.transpose() * p.listener.embed.row(3).transpose());
  CHECK((listener_forward(p, graphs.alice, onehot) - direct).norm() < 1e-12);

  p.listener.bilinear.setZero();
  CHECK(listener_forward(p, graphs.alice, msg).isZero());
  CHECK_THROWS(listener_forward(p, graphs.alice, Vec::Zero(15)));
}

TEST_CASE("game loss") {
  const std::vector<std::size_t> cands{3, 7, 1, 0, 20, 31};
  Vec zero = Vec::Zero(33);
  CHECK(game_loss(zero, 3, cands) == doctest::Approx(std::log(6.0)));
  Vec s = Vec::Zero(33);
  s(3) = 1000.0;
  CHECK(game_loss(s, 3, cands) == doctest::Approx(0.0).epsilon(1e-12));
  s(3) = -1000.0;
  CHECK(game_loss(s, 3, cands) == doctest::Approx(1000.0 + std::log(5.0)));
  Rng rng(8);
  for (Eigen::Index i = 0; i < 33; ++i) s(i) = 3.0 * rng.uniform();
  double denom = 0.0;
  for (auto c : cands) denom += std::exp(s(static_cast<Eigen::Index>(c)));
  CHECK(game_loss(s, 7, cands) == doctest::Approx(-std::log(std::exp(s(7)) / denom)).epsilon(1e-12));
  CHECK_THROWS(game_loss(s, 5, cands));
}

TEST_CASE("analytic gradients match central differences") {
  struct Case {
    ModelDims dims;
    bool pruned;
    double tau;
  };
  const std::vector<Case> cases{{small_dims(6, 3, 5, 1), true, 1.5},
                                {small_dims(8, 4, 8, 2), false, 1.0},
                                {small_dims(5, 5, 6, 3), true, 3.0}};
  TrainConfig cfg;
  cfg.dataset_size = 40;
  for (std::size_t c = 0; c < cases.size(); ++c) {
    CAPTURE(c);
    const auto& tc = cases[c];
    Rng rng(100 + c);
    AgentParams p = AgentParams::xavier(tc.dims, rng);
    const auto graphs = GameGraphs::build(tc.pruned);
    const auto ds = generate_dataset(cfg, 200 + c);
    const std::vector<GameInstance> batch(ds.train.begin(), ds.train.begin() + 6);
    const auto noise = gumbel_noise(rng, batch.size(), tc.dims.vocab_size);
    AgentParams grad = AgentParams::zeros(tc.dims);
    const double loss = batch_loss_and_grad(p, graphs, batch, noise, tc.tau, grad);
    CHECK(loss == doctest::Approx(batch_loss(p, graphs, batch, noise, tc.tau)).epsilon(1e-12));
    auto pt = p.tensors();
    const auto gt = grad.tensors();
    const double h = 1e-4;
    for (std::size_t t = 0; t < pt.size(); ++t) {
      Mat& m = *pt[t].second;
      int bad = 0;
      for (Eigen::Index i = 0; i < m.size(); ++i) {
        const double orig = m.data()[i];
        m.data()[i] = orig + h;
        const double lp = batch_loss(p, graphs, batch, noise, tc.tau);
        m.data()[i] = orig - h;
        const double lm = batch_loss(p, graphs, batch, noise, tc.tau);
        m.data()[i] = orig;
        const double fd = (lp - lm) / (2 * h);
        const double an = gt[t].second->data()[i];
        const double diff = std::abs(fd - an);
        if (diff > 1e-8 && diff > 1e-3 * std::max(std::abs(fd), std::abs(an))) ++bad;
      }
      CHECK_MESSAGE(bad == 0, pt[t].first);
    }
  }
}

TEST_CASE("zero parameters give chance loss and a zero gradient") {
  const auto dims = small_dims(6, 3, 16, 2);
  const auto p = AgentParams::zeros(dims);
  const auto graphs = GameGraphs::build(true);
  TrainConfig cfg;
  cfg.dataset_size = 20;
  const auto ds = generate_dataset(cfg, 1);
  Rng rng(9);
  const auto noise = gumbel_noise(rng, ds.train.size(), 16);
  AgentParams grad = AgentParams::zeros(dims);
  const double loss = batch_loss_and_grad(p, graphs, ds.train, noise, 1.5, grad);
  CHECK(loss == doctest::Approx(std::log(6.0)));
  for (const auto& [name, m] : grad.tensors()) CHECK_MESSAGE(m->isZero(0.0), name);
}

TEST_CASE("adam") {
  const auto dims = small_dims(4, 2, 16, 1);
  Rng rng(10);
  AgentParams p = AgentParams::xavier(dims, rng);
  const AgentParams start = p;
  AgentParams grad = AgentParams::zeros(dims);

  Adam zero_opt(p);
  zero_opt.step(p, grad);
  CHECK(params_equal(p, start));
  CHECK(zero_opt.steps() == 1);

  // First step moves every coordinate by lr * g / (|g| + eps).
  Adam opt(p, AdamSettings{0.01, 0.9, 0.999, 1e-8});
  for (auto& [name, m] : grad.tensors()) m->setConstant(0.5);
  opt.step(p, grad);
  const auto ps = p.tensors();
  const auto ss = start.tensors();
  for (std::size_t t = 0; t < ps.size(); ++t) {
    const Mat delta = *ss[t].second - *ps[t].second;
    CHECK(delta.minCoeff() == doctest::Approx(0.01 * 0.5 / (0.5 + 1e-8)).epsilon(1e-12));
    CHECK(delta.maxCoeff() == doctest::Approx(0.01 * 0.5 / (0.5 + 1e-8)).epsilon(1e-12));
  }

  // Three steps on one scalar with gradients 1, -2, 0.5, traced by hand.
  const double g[3] = {1.0, -2.0, 0.5};
  p = start;
  Adam trace(p, AdamSettings{0.1, 0.9, 0.999, 1e-8});
  double x = start.speaker.w_lex(0, 0), m = 0.0, v = 0.0;
  for (int k = 0; k < 3; ++k) {
    grad.set_zero();
    grad.speaker.w_lex(0, 0) = g[k];
    trace.step(p, grad);
    m = 0.9 * m + 0.1 * g[k];
    v = 0.999 * v + 0.001 * g[k] * g[k];
    const double mh = m / (1 - std::pow(0.9, k + 1));
    const double vh = v / (1 - std::pow(0.999, k + 1));
    x -= 0.1 * mh / (std::sqrt(vh) + 1e-8);
    CHECK(p.speaker.w_lex(0, 0) == doctest::Approx(x).epsilon(1e-14));
  }
  CHECK(p.speaker.w_lex(0, 1) == start.speaker.w_lex(0, 1));

  AgentParams other = AgentParams::zeros(small_dims(5, 2, 16, 1));
  CHECK_THROWS_AS(trace.step(p, other), InvariantError);
}

TEST_CASE("dataset generation") {
  TrainConfig cfg;
  const auto ds = generate_dataset(cfg, 42);
  CHECK(ds.train.size() == 8000);
  CHECK(ds.validation.size() == 2000);
  std::size_t bob = 0;
  for (const auto* split : {&ds.train, &ds.validation}) {
    for (const auto& inst : *split) {
      CHECK_UNARY(inst.target < kin::kNumRelatives);
      REQUIRE(inst.distractors.size() == 5);
      std::set<std::size_t> seen(inst.distractors.begin(), inst.distractors.end());
      CHECK(seen.size() == 5);
      CHECK_FALSE(seen.contains(inst.target));
      CHECK_UNARY(*seen.rbegin() < kin::kNumRelatives);
      const auto cands = inst.candidates();
      CHECK(cands.front() == inst.target);
      bob += inst.ego == kin::EgoIdentity::kBob ? 1 : 0;
    }
  }
  CHECK(std::abs(static_cast<double>(bob) - 5000.0) < 4 * std::sqrt(10000 * 0.25));

  const auto again = generate_dataset(cfg, 42);
  CHECK(again.train[123].distractors == ds.train[123].distractors);

  cfg.dataset_size = 100000;
  cfg.train_fraction = 1.0;
  const auto big = generate_dataset(cfg, 7);
  std::vector<double> freq(32, 0.0);
  for (const auto& inst : big.train) freq[inst.target] += 1.0;
  const double p = 1.0 / 32.0;
  const double se = std::sqrt(p * (1 - p) / 100000.0);
  for (double f : freq) CHECK(std::abs(f / 100000.0 - p) < 4 * se);

  cfg.target_sampling = TargetSampling::kNeedWeighted;
  CHECK_THROWS_AS(generate_dataset(cfg, 7), ValidationError);
  std::vector<double> w(32, 1.0);
  w[0] = 33.0;  // target 0 carries 33/64 of the mass
  const auto need = info::Distribution::from_weights(w);
  cfg.dataset_size = 20000;
  const auto weighted = generate_dataset(cfg, 8, &need);
  double zero = 0.0;
  for (const auto& inst : weighted.train) zero += inst.target == 0 ? 1.0 : 0.0;
  CHECK(std::abs(zero / 20000.0 - 33.0 / 64.0) < 4 * std::sqrt(0.25 / 20000.0));
}

TEST_CASE("evaluation of frozen agents") {
  const auto graphs = GameGraphs::build(true);
  const auto need = info::Distribution::uniform(32);
  double strict = 0.0;
  for (int init = 0; init < 20; ++init) {
    Rng rng(1000 + init);
    const auto p = AgentParams::xavier(ModelDims{}, rng);
    const auto ev = evaluate_agents(p, graphs, need);
    REQUIRE(ev.per_ego.size() == 2);
    CHECK(ev.per_ego[0].ego == kin::EgoIdentity::kBob);
    CHECK(ev.per_ego[1].ego == kin::EgoIdentity::kAlice);
    for (const auto& e : ev.per_ego) {
      CHECK(e.system.encoder.n_given() == 32);
      CHECK(e.system.encoder.n_out() == 128);
      for (std::size_t u = 0; u < 32; ++u) {
        const auto row = e.system.encoder.row(u);
        CHECK(std::count(row.begin(), row.end(), 1.0) == 1);
      }
      REQUIRE(e.system.decoder.has_value());
      for (std::size_t w = 0; w < 128; ++w) {
        const auto row = e.system.decoder->row(w);
        CHECK(std::accumulate(row.begin(), row.end(), 0.0) == doctest::Approx(1.0));
      }
      CHECK(e.point.distance_d >= 0.0);
      CHECK(e.point.accuracy >= 0.0);
      CHECK(e.point.accuracy <= 1.0);
    }
    CHECK(ev.average.accuracy ==
          doctest::Approx(0.5 * (ev.per_ego[0].point.accuracy + ev.per_ego[1].point.accuracy)));
    strict += ev.strict_accuracy;
  }
  strict /= 20.0;
  CHECK(strict >= 0.5 / 32.0);
  CHECK(strict <= 3.0 / 32.0);
  CHECK_THROWS_AS(evaluate_agents(AgentParams::zeros(ModelDims{}), graphs, info::Distribution::uniform(33)),
                  ValidationError);
}

TEST_CASE("training is deterministic and records the schedule") {
  const auto cfg = tiny_config();
  const auto need = info::Distribution::uniform(32);
  std::vector<int> sunk;
  const auto a = train(cfg, need, [&](const TrajectoryRecord& r, const AgentParams&) { sunk.push_back(r.epoch); });
  const auto b = train(cfg, need);
  CHECK(params_equal(a.params, b.params));
  std::vector<int> epochs;
  for (const auto& r : a.trajectory) epochs.push_back(r.epoch);
  CHECK(epochs == std::vector<int>{0, 2, 4, 5});
  CHECK(sunk == epochs);
  REQUIRE(a.trajectory.size() == b.trajectory.size());
  for (std::size_t i = 0; i < a.trajectory.size(); ++i) {
    CHECK(a.trajectory[i].train_loss == b.trajectory[i].train_loss);
    CHECK(a.trajectory[i].eval.average.accuracy == b.trajectory[i].eval.average.accuracy);
  }

  auto other = cfg;
  other.seed = 12;
  CHECK_FALSE(params_equal(train(other, need).params, a.params));

  // Epoch 0 is the untrained initialization.
  auto zero = cfg;
  zero.epochs = 0;
  const auto z = train(zero, need);
  REQUIRE(z.trajectory.size() == 1);
  CHECK(z.trajectory[0].eval.average.accuracy == a.trajectory[0].eval.average.accuracy);
  CHECK(z.trajectory[0].train_loss == a.trajectory[0].train_loss);
}

TEST_CASE("checkpoint selection") {
  std::vector<TrajectoryRecord> traj;
  for (double acc : {0.1, 0.4, 0.63, 0.59, 0.9}) {
    TrajectoryRecord r;
    r.epoch = static_cast<int>(traj.size()) * 10;
    r.eval.average.accuracy = acc;
    traj.push_back(r);
  }
  CHECK(select_checkpoint(traj, 0.6) == 3);
  CHECK(select_checkpoint(traj, 1.0) == 4);
  CHECK(select_checkpoint(traj, 0.0) == 0);
  traj[2].eval.average.accuracy = 0.59;
  CHECK(select_checkpoint(traj, 0.6) == 2);  // tie goes to the earlier epoch
  CHECK_THROWS_AS(select_checkpoint({}, 0.5), ValidationError);
}

TEST_CASE("checkpoint round trip and corruption") {
  Checkpoint ck;
  ck.config = tiny_config();
  ck.epoch = 40;
  ck.run_id = "run3";
  Rng rng(12);
  ck.params = AgentParams::xavier(dims_of(ck.config), rng);
  const std::string bytes = serialize_checkpoint(ck);
  CHECK(bytes.substr(0, 8) == "LEXOPTCK");
  CHECK(static_cast<std::uint8_t>(bytes[8]) == kCheckpointVersion);

  const auto back = deserialize_checkpoint(bytes);
  CHECK(back.epoch == 40);
  CHECK(back.run_id == "run3");
  CHECK(to_json(back.config) == to_json(ck.config));
  CHECK(params_equal(back.params, ck.params));
  CHECK(serialize_checkpoint(back) == bytes);

  std::string bad = bytes;
  bad[0] = 'X';
  CHECK_THROWS_AS(deserialize_checkpoint(bad), FormatError);
  bad = bytes;
  bad[8] = 2;
  CHECK_THROWS_AS(deserialize_checkpoint(bad), FormatError);
  for (std::size_t len : {std::size_t{0}, std::size_t{5}, std::size_t{20}, bytes.size() / 2, bytes.size() - 1}) {
    CAPTURE(len);
    CHECK_THROWS_AS(deserialize_checkpoint(std::string_view(bytes).substr(0, len)), FormatError);
  }
  CHECK_THROWS_AS(deserialize_checkpoint(bytes + "x"), FormatError);

  // A config whose shapes disagree with the stored tensors.
  Checkpoint wrong = ck;
  wrong.params = AgentParams::zeros(small_dims(7, 4, 16, 2));
  CHECK_THROWS_AS(deserialize_checkpoint(serialize_checkpoint(wrong)), FormatError);
}

TEST_CASE("training config json") {
  TrainConfig cfg;
  CHECK(cfg.violations().empty());
  const auto j = to_json(cfg);
  CHECK(j["embedding_dim"] == 80);
  CHECK(j["gumbel_temperature"] == 1.5);
  CHECK(j["target_sampling"] == "uniform");
  CHECK(to_json(config_from_json(j)) == j);
  CHECK(config_from_json(nlohmann::json::object()).epochs == 500);

  const auto partial = config_from_json({{"vocab_size", 64}, {"graph_pruning", false}});
  CHECK(partial.vocab_size == 64);
  CHECK_FALSE(partial.graph_pruning);

  try {
    config_from_json({{"vocab_size", 8}, {"batch_size", 0}, {"colour", "red"}});
    FAIL("expected a validation error");
  } catch (const ValidationError& e) {
    const std::string what = e.what();
    CHECK(what.find("colour") != std::string::npos);
  }
  cfg.vocab_size = 8;
  cfg.batch_size = 0;
  cfg.learning_rate = -1;
  CHECK(cfg.violations().size() == 3);
  CHECK_THROWS_AS(cfg.validate(), ValidationError);
}

}  // TEST_SUITE
