#include "lexopt/mc/listener_mc.hpp"
#include "welford.hpp"

namespace lexopt::mc {

PopulationSummary simulate_population_serial(const info::NamingSystem& system,
                                             const FlipConfig& cfg, std::uint32_t condition) {
  cfg.validate();
  system.validate();
  const auto& p = system.need;
  const auto& enc = system.encoder;
  const info::BayesianDecoder bayes = info::bayesian_decoder(p, enc);
  const double H = info::entropy(p);
  const double C = info::complexity(p, enc);

  detail::ListenerStats stats;
  for (std::uint64_t i = 0; i < cfg.population_size; ++i) {
    CounterStream rng = CounterStream::for_listener(cfg.base_seed, condition, i);
    const auto decoder = perturb_decoder(bayes, cfg.flip_rate, rng);
    const double loss = info::information_loss(p, enc, decoder);
    stats.add(info::distance_to_optimal(loss, C, H), loss, info::accuracy(p, enc, decoder));
  }

  PopulationSummary s;
  s.flip_rate = cfg.flip_rate;
  s.n = cfg.population_size;
  s.distance = stats.distance.stats();
  s.info_loss = stats.info_loss.stats();
  s.accuracy = stats.accuracy.stats();
  s.complexity = C;
  s.entropy = H;
  return s;
}

}  // namespace lexopt::mc
