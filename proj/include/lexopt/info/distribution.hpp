#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace lexopt::info {

/// Tolerance on row sums for every probability vector in the library.
inline constexpr double kNormTolerance = 1e-12;

/// A validated probability vector over a finite support.
class Distribution {
 public:
  /// Throws ValidationError unless entries are finite, non-negative and sum to
  /// one within kNormTolerance.
  explicit Distribution(std::vector<double> probs);

  static Distribution uniform(std::size_t n);
  static Distribution point_mass(std::size_t n, std::size_t at);
  /// Normalizes non-negative weights with a positive total.
  static Distribution from_weights(std::span<const double> weights);

  std::size_t size() const noexcept { return probs_.size(); }
  double operator[](std::size_t i) const { return probs_[i]; }
  std::span<const double> probs() const noexcept { return probs_; }

 private:
  std::vector<double> probs_;
};

/// Row-stochastic matrix q(out | given), stored row-major.
class ConditionalDistribution {
 public:
  ConditionalDistribution(std::size_t n_given, std::size_t n_out, std::vector<double> data);

  static ConditionalDistribution uniform(std::size_t n_given, std::size_t n_out);
  /// Normalizes each row of a non-negative weight matrix; every row needs a
  /// positive total.
  static ConditionalDistribution from_weights(std::size_t n_given, std::size_t n_out,
                                              std::span<const double> weights);

  std::size_t n_given() const noexcept { return n_given_; }
  std::size_t n_out() const noexcept { return n_out_; }

  double operator()(std::size_t given, std::size_t out) const {
    return data_[given * n_out_ + out];
  }
  std::span<const double> row(std::size_t given) const {
    return {data_.data() + given * n_out_, n_out_};
  }
  std::span<const double> data() const noexcept { return data_; }

  /// Replaces one row; the new row is validated.
  void set_row(std::size_t given, std::span<const double> values);

 private:
  std::size_t n_given_;
  std::size_t n_out_;
  std::vector<double> data_;
};

/// Throws ValidationError if `values` is not a probability vector.
void check_probability_vector(std::span<const double> values, const char* what);

}  // namespace lexopt::info
