#pragma once

#include <cmath>
#include <cstdint>

#include "lexopt/mc/listener_mc.hpp"

namespace lexopt::mc::detail {

// Running mean / sum of squared deviations with Chan's pairwise merge.
struct Welford {
  std::uint64_t n = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++n;
    const double delta = x - mean;
    mean += delta / static_cast<double>(n);
    m2 += delta * (x - mean);
  }

  void merge(const Welford& other) {
    if (other.n == 0) return;
    if (n == 0) {
      *this = other;
      return;
    }
    const double na = static_cast<double>(n);
    const double nb = static_cast<double>(other.n);
    const double total = na + nb;
    const double delta = other.mean - mean;
    mean += delta * nb / total;
    m2 += other.m2 + delta * delta * na * nb / total;
    n += other.n;
  }

  MetricStats stats() const {
    const double var = n > 1 ? m2 / static_cast<double>(n - 1) : 0.0;
    return {mean, std::sqrt(var > 0.0 ? var : 0.0)};
  }
};

struct ListenerStats {
  Welford distance;
  Welford info_loss;
  Welford accuracy;

  void add(double d, double l, double a) {
    distance.add(d);
    info_loss.add(l);
    accuracy.add(a);
  }
  void merge(const ListenerStats& o) {
    distance.merge(o.distance);
    info_loss.merge(o.info_loss);
    accuracy.merge(o.accuracy);
  }
};

}  // namespace lexopt::mc::detail
