#include <algorithm>

#include "lexopt/error.hpp"
#include "lexopt/kin/count_table.hpp"
#include "lexopt/kin/kinship_graph.hpp"

namespace lexopt::kin {

EstimatedSystem estimate_system(const CountTable& table) {
  std::vector<std::string> members;
  for (std::size_t i = 0; i < kNumRelatives; ++i) members.emplace_back(member_inventory()[i].label);
  return estimate_system(table, members);
}

EstimatedSystem estimate_system(const CountTable& table, const std::vector<std::string>& members) {
  table.validate();
  if (members.empty()) throw ValidationError("estimate_system: empty member set");

  std::vector<std::string> words;
  for (const auto& r : table.rows) {
    if (std::find(words.begin(), words.end(), r.term) == words.end()) words.push_back(r.term);
  }
  if (words.empty()) throw ValidationError("estimate_system: table has no terms");

  const std::size_t n_obj = members.size();
  const std::size_t n_words = words.size();
  std::vector<double> joint(n_obj * n_words, 0.0);
  for (const auto& r : table.rows) {
    const auto m = std::find(members.begin(), members.end(), r.member);
    if (m == members.end()) {
      throw ValidationError("estimate_system: member '" + r.member + "' is outside the object set");
    }
    const auto w = std::find(words.begin(), words.end(), r.term);
    joint[static_cast<std::size_t>(m - members.begin()) * n_words +
          static_cast<std::size_t>(w - words.begin())] += r.count;
  }

  std::vector<double> member_totals(n_obj, 0.0);
  for (std::size_t u = 0; u < n_obj; ++u) {
    for (std::size_t w = 0; w < n_words; ++w) member_totals[u] += joint[u * n_words + w];
    if (!(member_totals[u] > 0.0)) {
      throw ValidationError("estimate_system: member '" + members[u] + "' has zero count in " +
                            (table.language.empty() ? std::string("table") : table.language));
    }
  }

  info::Distribution need = info::Distribution::from_weights(member_totals);
  info::ConditionalDistribution encoder =
      info::ConditionalDistribution::from_weights(n_obj, n_words, joint);
  info::BayesianDecoder bayes = info::bayesian_decoder(need, encoder);

  EstimatedSystem out{info::NamingSystem{members, words, std::move(need), std::move(encoder),
                                         std::move(bayes.decoder)},
                      std::move(bayes.used)};
  out.system.validate();
  return out;
}

}  // namespace lexopt::kin
