#include <algorithm>
#include <cmath>
#include <vector>

#include <omp.h>

#include "lexopt/error.hpp"
#include "lexopt/mc/listener_mc.hpp"
#include "welford.hpp"

namespace lexopt::mc {
namespace {

constexpr std::uint64_t kBlockSize = 4096;

// Contribution of one used word to L and to accuracy, for the Bayesian row
// and for the uniform replacement row.
struct WordTerms {
  double loss_bayes;
  double loss_flip;
  double acc_bayes;
  double acc_flip;
};

}  // namespace

PopulationSummary simulate_population(const info::NamingSystem& system, const FlipConfig& cfg,
                                      std::uint32_t condition) {
  cfg.validate();
  system.validate();
  const auto& p = system.need;
  const auto& enc = system.encoder;
  const info::BayesianDecoder bayes = info::bayesian_decoder(p, enc);
  const double H = info::entropy(p);
  const double C = info::complexity(p, enc);
  const std::size_t n_obj = p.size();
  const double log_objects = std::log(static_cast<double>(n_obj));
  const double inv_objects = 1.0 / static_cast<double>(n_obj);

  std::vector<WordTerms> terms;
  for (std::size_t w = 0; w < enc.n_out(); ++w) {
    if (!bayes.used[w]) continue;
    WordTerms t{0.0, 0.0, 0.0, 0.0};
    for (std::size_t u = 0; u < n_obj; ++u) {
      const double joint = p[u] * enc(u, w);
      if (joint <= 0.0) continue;
      t.loss_bayes -= joint * std::log(bayes.decoder(w, u));
      t.loss_flip += joint * log_objects;
      t.acc_bayes += joint * bayes.decoder(w, u);
      t.acc_flip += joint * inv_objects;
    }
    terms.push_back(t);
  }

  const std::uint64_t n = cfg.population_size;
  const std::uint64_t n_blocks = (n + kBlockSize - 1) / kBlockSize;
  std::vector<detail::ListenerStats> partial(n_blocks);
  const double rate = cfg.flip_rate;

#pragma omp parallel for num_threads(cfg.workers) schedule(dynamic, 1)
  for (std::int64_t b = 0; b < static_cast<std::int64_t>(n_blocks); ++b) {
    const std::uint64_t begin = static_cast<std::uint64_t>(b) * kBlockSize;
    const std::uint64_t end = std::min(n, begin + kBlockSize);
    detail::ListenerStats local;
    for (std::uint64_t i = begin; i < end; ++i) {
      CounterStream rng = CounterStream::for_listener(cfg.base_seed, condition, i);
      double loss = 0.0;
      double acc = 0.0;
      for (const WordTerms& t : terms) {
        const bool flip = rng.next_uniform() < rate;
        loss += flip ? t.loss_flip : t.loss_bayes;
        acc += flip ? t.acc_flip : t.acc_bayes;
      }
      local.add(info::distance_to_optimal(loss, C, H), loss, acc);
    }
    partial[static_cast<std::size_t>(b)] = local;
  }

  detail::ListenerStats total;
  for (const auto& block : partial) total.merge(block);

  PopulationSummary s;
  s.flip_rate = rate;
  s.n = n;
  s.distance = total.distance.stats();
  s.info_loss = total.info_loss.stats();
  s.accuracy = total.accuracy.stats();
  s.complexity = C;
  s.entropy = H;
  return s;
}

std::vector<PopulationSummary> sweep_flip_rates(const info::NamingSystem& system,
                                                const std::vector<double>& rates,
                                                const FlipConfig& base) {
  if (rates.empty()) throw ValidationError("sweep_flip_rates: no flip rates given");
  std::vector<PopulationSummary> out;
  out.reserve(rates.size());
  for (std::size_t i = 0; i < rates.size(); ++i) {
    FlipConfig cfg = base;
    cfg.flip_rate = rates[i];
    out.push_back(simulate_population(system, cfg, static_cast<std::uint32_t>(i)));
  }
  return out;
}

}  // namespace lexopt::mc
