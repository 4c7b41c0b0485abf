#pragma once

#include <vector>

#include "lexopt/game/params.hpp"

namespace lexopt::game {

struct AdamSettings {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Bias-corrected Adam over the tensors of AgentParams in their fixed order.
class Adam {
 public:
  Adam(const AgentParams& params, AdamSettings settings = {});

  void step(AgentParams& params, const AgentParams& grad);
  long steps() const noexcept { return t_; }

 private:
  AdamSettings settings_;
  std::vector<Mat> m_;
  std::vector<Mat> v_;
  long t_ = 0;
};

}  // namespace lexopt::game
