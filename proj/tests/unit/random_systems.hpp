#pragma once

#include <random>
#include <vector>

#include "lexopt/info/measures.hpp"

namespace lexopt::testing {

// Random full-support need and row-stochastic encoder; rows may contain zeros
// when `sparse` is set.
inline info::NamingSystem random_system(std::mt19937_64& gen, std::size_t n_obj, std::size_t n_words,
                                        bool sparse = false) {
  std::uniform_real_distribution<double> unit(0.01, 1.0);
  std::bernoulli_distribution drop(0.4);
  std::vector<double> need(n_obj);
  for (auto& v : need) v = unit(gen);
  std::vector<double> enc(n_obj * n_words);
  for (std::size_t u = 0; u < n_obj; ++u) {
    bool any = false;
    for (std::size_t w = 0; w < n_words; ++w) {
      double v = unit(gen);
      if (sparse && drop(gen)) v = 0.0;
      enc[u * n_words + w] = v;
      any = any || v > 0.0;
    }
    if (!any) enc[u * n_words] = 1.0;
  }
  info::NamingSystem s{std::vector<std::string>(n_obj, "u"), std::vector<std::string>(n_words, "w"),
                       info::Distribution::from_weights(need),
                       info::ConditionalDistribution::from_weights(n_obj, n_words, enc), std::nullopt};
  return s;
}

}  // namespace lexopt::testing
