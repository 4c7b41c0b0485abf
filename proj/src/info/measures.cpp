#include "lexopt/info/measures.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "lexopt/error.hpp"

namespace lexopt::info {
namespace {

void check_encoder(const Distribution& p, const ConditionalDistribution& encoder) {
  if (encoder.n_given() != p.size()) {
    throw ValidationError("encoder rows (" + std::to_string(encoder.n_given()) +
                          ") do not match object count (" + std::to_string(p.size()) + ")");
  }
}

void check_decoder(const ConditionalDistribution& encoder, const ConditionalDistribution& decoder) {
  if (decoder.n_given() != encoder.n_out() || decoder.n_out() != encoder.n_given()) {
    throw ValidationError("decoder shape does not transpose encoder shape");
  }
}

}  // namespace

double entropy(const Distribution& p) {
  double h = 0.0;
  for (double v : p.probs()) {
    if (v > 0.0) h -= v * std::log(v);
  }
  return h;
}

Distribution word_marginal(const Distribution& p, const ConditionalDistribution& encoder) {
  check_encoder(p, encoder);
  std::vector<double> marginal(encoder.n_out(), 0.0);
  for (std::size_t u = 0; u < p.size(); ++u) {
    const auto row = encoder.row(u);
    for (std::size_t w = 0; w < row.size(); ++w) marginal[w] += p[u] * row[w];
  }
  // Summation order can leave the total a few ulps off one.
  return Distribution::from_weights(marginal);
}

double complexity(const Distribution& p, const ConditionalDistribution& encoder) {
  const Distribution marginal = word_marginal(p, encoder);
  double c = 0.0;
  for (std::size_t u = 0; u < p.size(); ++u) {
    const auto row = encoder.row(u);
    for (std::size_t w = 0; w < row.size(); ++w) {
      const double joint = p[u] * row[w];
      if (joint > 0.0) c += joint * std::log(row[w] / marginal[w]);
    }
  }
  return c;
}

std::size_t BayesianDecoder::n_used() const {
  std::size_t n = 0;
  for (bool b : used) n += b ? 1 : 0;
  return n;
}

BayesianDecoder bayesian_decoder(const Distribution& p, const ConditionalDistribution& encoder) {
  check_encoder(p, encoder);
  const std::size_t n_obj = p.size();
  const std::size_t n_words = encoder.n_out();
  std::vector<double> joint(n_words * n_obj, 0.0);
  std::vector<bool> used(n_words, false);
  for (std::size_t u = 0; u < n_obj; ++u) {
    for (std::size_t w = 0; w < n_words; ++w) {
      const double j = p[u] * encoder(u, w);
      joint[w * n_obj + u] = j;
      if (j > 0.0) used[w] = true;
    }
  }
  bool any = false;
  for (std::size_t w = 0; w < n_words; ++w) {
    if (!used[w]) {
      std::fill_n(joint.begin() + static_cast<std::ptrdiff_t>(w * n_obj), n_obj, 1.0);
    } else {
      any = true;
    }
  }
  if (!any) throw ValidationError("bayesian_decoder: no word has positive probability");
  return BayesianDecoder{ConditionalDistribution::from_weights(n_words, n_obj, joint),
                         std::move(used)};
}

double information_loss(const Distribution& p, const ConditionalDistribution& encoder,
                        const ConditionalDistribution& decoder) {
  check_encoder(p, encoder);
  check_decoder(encoder, decoder);
  double loss = 0.0;
  for (std::size_t u = 0; u < p.size(); ++u) {
    const auto row = encoder.row(u);
    for (std::size_t w = 0; w < row.size(); ++w) {
      const double joint = p[u] * row[w];
      if (joint <= 0.0) continue;
      const double q = decoder(w, u);
      if (q <= 0.0) return kInfiniteLoss;
      loss -= joint * std::log(q);
    }
  }
  return loss;
}

double kl_divergence(std::span<const double> a, std::span<const double> b) {
  if (a.size() != b.size()) throw ValidationError("kl_divergence: size mismatch");
  double kl = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] <= 0.0) continue;
    if (b[i] <= 0.0) return std::numeric_limits<double>::infinity();
    kl += a[i] * std::log(a[i] / b[i]);
  }
  return kl;
}

LossDecomposition decompose_information_loss(const Distribution& p,
                                             const ConditionalDistribution& encoder,
                                             const ConditionalDistribution& decoder) {
  check_decoder(encoder, decoder);
  const BayesianDecoder bayes = bayesian_decoder(p, encoder);
  const Distribution marginal = word_marginal(p, encoder);
  double gap = 0.0;
  for (std::size_t w = 0; w < encoder.n_out(); ++w) {
    if (!bayes.used[w]) continue;
    gap += marginal[w] * kl_divergence(bayes.decoder.row(w), decoder.row(w));
  }
  return LossDecomposition{entropy(p), complexity(p, encoder), gap};
}

double distance_to_optimal(double info_loss, double complexity, double entropy) {
  const double excess = info_loss - entropy + complexity;
  if (excess < -kFeasibilityTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "point below the optimal curve: L=" << info_loss << " H=" << entropy
        << " C=" << complexity;
    throw InvariantError(msg.str());
  }
  return std::max(excess, 0.0) / std::numbers::sqrt2;
}

double accuracy(const Distribution& p, const ConditionalDistribution& encoder,
                const ConditionalDistribution& decoder) {
  check_encoder(p, encoder);
  check_decoder(encoder, decoder);
  double acc = 0.0;
  for (std::size_t u = 0; u < p.size(); ++u) {
    const auto row = encoder.row(u);
    for (std::size_t w = 0; w < row.size(); ++w) acc += p[u] * row[w] * decoder(w, u);
  }
  return acc;
}

double ib_objective_discrete(const Distribution& p, const ConditionalDistribution& encoder,
                             double beta) {
  if (!(beta >= 1.0)) throw ValidationError("ib_objective_discrete: beta must be >= 1");
  return (1.0 - beta) * complexity(p, encoder);
}

TradeoffPoint average(const std::vector<TradeoffPoint>& points) {
  if (points.empty()) throw ValidationError("average of no trade-off points");
  TradeoffPoint out;
  for (const auto& pt : points) {
    out.entropy_H += pt.entropy_H;
    out.complexity_C += pt.complexity_C;
    out.adjusted_C += pt.adjusted_C;
    out.info_loss_L += pt.info_loss_L;
    out.distance_d += pt.distance_d;
    out.accuracy += pt.accuracy;
  }
  const double n = static_cast<double>(points.size());
  out.entropy_H /= n;
  out.complexity_C /= n;
  out.adjusted_C /= n;
  out.info_loss_L /= n;
  out.distance_d /= n;
  out.accuracy /= n;
  return out;
}

void NamingSystem::validate() const {
  if (object_labels.size() != need.size()) {
    throw ValidationError("object label count does not match need distribution");
  }
  if (encoder.n_given() != need.size()) {
    throw ValidationError("encoder rows do not match object count");
  }
  if (word_labels.size() != encoder.n_out()) {
    throw ValidationError("word label count does not match encoder columns");
  }
  if (decoder) check_decoder(encoder, *decoder);
}

TradeoffPoint evaluate_system(const NamingSystem& system) {
  system.validate();
  TradeoffPoint pt;
  pt.entropy_H = entropy(system.need);
  pt.complexity_C = complexity(system.need, system.encoder);
  pt.adjusted_C = pt.complexity_C - pt.entropy_H;
  if (system.decoder) {
    pt.info_loss_L = information_loss(system.need, system.encoder, *system.decoder);
    pt.accuracy = accuracy(system.need, system.encoder, *system.decoder);
  } else {
    const BayesianDecoder bayes = bayesian_decoder(system.need, system.encoder);
    pt.info_loss_L = information_loss(system.need, system.encoder, bayes.decoder);
    pt.accuracy = accuracy(system.need, system.encoder, bayes.decoder);
  }
  pt.distance_d = distance_to_optimal(pt.info_loss_L, pt.complexity_C, pt.entropy_H);
  return pt;
}

}  // namespace lexopt::info
