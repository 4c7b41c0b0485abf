#pragma once

// Populations of non-Bayesian listeners. A listener starts from the speaker's
// Bayesian decoder and, independently for every used word, replaces that
// word's decoded distribution with the uniform distribution over objects with
// probability equal to the flip rate.

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "lexopt/info/measures.hpp"
#include "lexopt/mc/philox.hpp"

namespace lexopt::mc {

inline constexpr std::uint64_t kDefaultPopulation = 100000;

struct FlipConfig {
  double flip_rate = 0.0;
  std::uint64_t population_size = kDefaultPopulation;
  std::uint64_t base_seed = 0;
  int workers = 1;

  void validate() const;
};

struct MetricStats {
  double mean = 0.0;
  double std = 0.0;  // sample standard deviation; 0 for a single listener
};

struct PopulationSummary {
  double flip_rate = 0.0;
  std::uint64_t n = 0;
  MetricStats distance;
  MetricStats info_loss;
  MetricStats accuracy;
  double complexity = 0.0;
  double entropy = 0.0;
};

/// One listener's decoder. Consumes one uniform draw per used word, in word
/// order; unused rows are copied unchanged.
info::ConditionalDistribution perturb_decoder(const info::BayesianDecoder& bayes, double flip_rate,
                                              CounterStream& rng);

/// Parallel kernel. Listeners are grouped into fixed-size blocks whose partial
/// statistics are merged in block order, so the result is bit-identical for
/// every worker count. `condition` selects an independent family of streams.
/// The system's attached decoder (if any) is ignored; the speaker's Bayesian
/// decoder is the reference listener.
PopulationSummary simulate_population(const info::NamingSystem& system, const FlipConfig& cfg,
                                      std::uint32_t condition = 0);

/// Serial reference: materializes every perturbed decoder and evaluates it with
/// the info-core routines. Same random streams as the parallel kernel.
PopulationSummary simulate_population_serial(const info::NamingSystem& system,
                                             const FlipConfig& cfg, std::uint32_t condition = 0);

/// One summary per rate; rate i uses stream condition i.
std::vector<PopulationSummary> sweep_flip_rates(const info::NamingSystem& system,
                                                const std::vector<double>& rates,
                                                const FlipConfig& base);

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double r_squared = 0.0;
};

/// Ordinary least squares. When ys has zero variance the fit is exact and
/// r_squared is reported as 1. Throws ValidationError unless xs has at least
/// two distinct values.
LineFit fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

// Serialization -------------------------------------------------------------

std::string summary_csv_header();
std::string summary_csv_row(const std::string& language, const PopulationSummary& s);
nlohmann::json to_json(const std::string& language, const PopulationSummary& s);

}  // namespace lexopt::mc
