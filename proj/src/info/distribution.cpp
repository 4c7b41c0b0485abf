#include "lexopt/info/distribution.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "lexopt/error.hpp"

namespace lexopt::info {

void check_probability_vector(std::span<const double> values, const char* what) {
  if (values.empty()) {
    throw ValidationError(std::string(what) + ": empty support");
  }
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    const double v = values[i];
    if (!std::isfinite(v) || v < 0.0) {
      std::ostringstream msg;
      msg << what << ": entry " << i << " is " << v;
      throw ValidationError(msg.str());
    }
    total += v;
  }
  if (std::abs(total - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << what << ": sums to " << total;
    throw ValidationError(msg.str());
  }
}

Distribution::Distribution(std::vector<double> probs) : probs_(std::move(probs)) {
  check_probability_vector(probs_, "distribution");
}

Distribution Distribution::uniform(std::size_t n) {
  if (n == 0) throw ValidationError("uniform distribution over empty support");
  return Distribution(std::vector<double>(n, 1.0 / static_cast<double>(n)));
}

Distribution Distribution::point_mass(std::size_t n, std::size_t at) {
  if (at >= n) throw ValidationError("point mass outside support");
  std::vector<double> probs(n, 0.0);
  probs[at] = 1.0;
  return Distribution(std::move(probs));
}

Distribution Distribution::from_weights(std::span<const double> weights) {
  double total = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w < 0.0) throw ValidationError("negative or non-finite weight");
    total += w;
  }
  if (!(total > 0.0)) throw ValidationError("weights sum to zero");
  std::vector<double> probs(weights.begin(), weights.end());
  for (double& v : probs) v /= total;
  return Distribution(std::move(probs));
}

ConditionalDistribution::ConditionalDistribution(std::size_t n_given, std::size_t n_out,
                                                 std::vector<double> data)
    : n_given_(n_given), n_out_(n_out), data_(std::move(data)) {
  if (n_given_ == 0 || n_out_ == 0) {
    throw ValidationError("conditional distribution with empty dimension");
  }
  if (data_.size() != n_given_ * n_out_) {
    throw ValidationError("conditional distribution: data size does not match dimensions");
  }
  for (std::size_t r = 0; r < n_given_; ++r) check_probability_vector(row(r), "conditional row");
}

ConditionalDistribution ConditionalDistribution::uniform(std::size_t n_given, std::size_t n_out) {
  return ConditionalDistribution(
      n_given, n_out,
      std::vector<double>(n_given * n_out, 1.0 / static_cast<double>(n_out)));
}

ConditionalDistribution ConditionalDistribution::from_weights(std::size_t n_given,
                                                              std::size_t n_out,
                                                              std::span<const double> weights) {
  if (weights.size() != n_given * n_out) {
    throw ValidationError("weight matrix size does not match dimensions");
  }
  std::vector<double> data(weights.begin(), weights.end());
  for (std::size_t r = 0; r < n_given; ++r) {
    double total = 0.0;
    for (std::size_t c = 0; c < n_out; ++c) {
      const double w = data[r * n_out + c];
      if (!std::isfinite(w) || w < 0.0) throw ValidationError("negative or non-finite weight");
      total += w;
    }
    if (!(total > 0.0)) throw ValidationError("weight row sums to zero");
    for (std::size_t c = 0; c < n_out; ++c) data[r * n_out + c] /= total;
  }
  return ConditionalDistribution(n_given, n_out, std::move(data));
}

void ConditionalDistribution::set_row(std::size_t given, std::span<const double> values) {
  if (given >= n_given_ || values.size() != n_out_) {
    throw ValidationError("set_row: index or width mismatch");
  }
  check_probability_vector(values, "conditional row");
  std::copy(values.begin(), values.end(), data_.begin() + static_cast<std::ptrdiff_t>(given * n_out_));
}

}  // namespace lexopt::info
