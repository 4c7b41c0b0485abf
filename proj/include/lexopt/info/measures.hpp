#pragma once

// Information-theoretic quantities of a discrete naming system: a need
// distribution p(u) over objects, a speaker encoder q_s(w|u) and a listener
// decoder q_l(u|w). All values are in nats.

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "lexopt/info/distribution.hpp"

namespace lexopt::info {

/// Value returned by information_loss when the listener assigns zero
/// probability to a referent that the speaker actually produces.
inline constexpr double kInfiniteLoss = std::numeric_limits<double>::infinity();

/// Slack allowed below the optimal curve before a point is declared infeasible.
inline constexpr double kFeasibilityTolerance = 1e-9;

double entropy(const Distribution& p);

/// p_s(w) = sum_u p(u) q_s(w|u).
Distribution word_marginal(const Distribution& p, const ConditionalDistribution& encoder);

/// I(U;W) under the encoder.
double complexity(const Distribution& p, const ConditionalDistribution& encoder);

/// Bayes inversion of the speaker. Rows of words with p_s(w) = 0 are uniform
/// and marked unused.
struct BayesianDecoder {
  ConditionalDistribution decoder;  // |W| x |U|
  std::vector<bool> used;           // p_s(w) > 0

  std::size_t n_used() const;
};

BayesianDecoder bayesian_decoder(const Distribution& p, const ConditionalDistribution& encoder);

/// Expected cross-entropy -sum_u p(u) sum_w q_s(w|u) log q_l(u|w).
/// Returns kInfiniteLoss when q_l(u|w) = 0 on a pair with p(u) q_s(w|u) > 0.
double information_loss(const Distribution& p, const ConditionalDistribution& encoder,
                        const ConditionalDistribution& decoder);

struct LossDecomposition {
  double entropy;
  double complexity;
  double bayes_gap;  // E_{w~p_s} KL(bayes(.|w) || q_l(.|w)); infinite on support violation

  double total() const { return entropy - complexity + bayes_gap; }
};

LossDecomposition decompose_information_loss(const Distribution& p,
                                             const ConditionalDistribution& encoder,
                                             const ConditionalDistribution& decoder);

/// Euclidean distance from (C, L) to the optimal curve L = H - C.
/// Throws InvariantError for points below the curve beyond kFeasibilityTolerance;
/// rounding residues inside the tolerance are reported as 0.
double distance_to_optimal(double info_loss, double complexity, double entropy);

/// Relaxed accuracy sum_u p(u) sum_w q_s(w|u) q_l(u|w).
double accuracy(const Distribution& p, const ConditionalDistribution& encoder,
                const ConditionalDistribution& decoder);

/// Discrete information-bottleneck objective (1 - beta) I(U;W); beta >= 1.
double ib_objective_discrete(const Distribution& p, const ConditionalDistribution& encoder,
                             double beta);

/// KL(a || b) in nats; infinite if b vanishes where a does not.
double kl_divergence(std::span<const double> a, std::span<const double> b);

// ---------------------------------------------------------------------------

/// One evaluated system in the complexity / information-loss plane.
struct TradeoffPoint {
  double entropy_H = 0.0;
  double complexity_C = 0.0;
  double adjusted_C = 0.0;  // C - H
  double info_loss_L = 0.0;
  double distance_d = 0.0;
  double accuracy = 0.0;
};

/// Field-wise arithmetic mean of a non-empty list of points.
TradeoffPoint average(const std::vector<TradeoffPoint>& points);

struct NamingSystem {
  std::vector<std::string> object_labels;
  std::vector<std::string> word_labels;
  Distribution need;
  ConditionalDistribution encoder;                // |U| x |W|
  std::optional<ConditionalDistribution> decoder;  // |W| x |U|

  /// Throws ValidationError on any dimension mismatch.
  void validate() const;
};

/// Evaluates a system; without a decoder the Bayesian decoder is used.
TradeoffPoint evaluate_system(const NamingSystem& system);

}  // namespace lexopt::info
