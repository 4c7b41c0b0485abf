#include <algorithm>
#include <vector>

#include "lexopt/error.hpp"
#include "lexopt/mc/listener_mc.hpp"

namespace lexopt::mc {

void FlipConfig::validate() const {
  if (!(flip_rate >= 0.0 && flip_rate <= 1.0)) {
    throw ValidationError("flip rate must lie in [0, 1]");
  }
  if (population_size == 0) throw ValidationError("population size must be positive");
  if (workers < 1) throw ValidationError("worker count must be positive");
}

info::ConditionalDistribution perturb_decoder(const info::BayesianDecoder& bayes, double flip_rate,
                                              CounterStream& rng) {
  const auto& base = bayes.decoder;
  std::vector<double> data(base.data().begin(), base.data().end());
  const double uniform = 1.0 / static_cast<double>(base.n_out());
  for (std::size_t w = 0; w < base.n_given(); ++w) {
    if (!bayes.used[w]) continue;
    if (rng.next_uniform() < flip_rate) {
      std::fill_n(data.begin() + static_cast<std::ptrdiff_t>(w * base.n_out()), base.n_out(), uniform);
    }
  }
  return info::ConditionalDistribution(base.n_given(), base.n_out(), std::move(data));
}

}  // namespace lexopt::mc
