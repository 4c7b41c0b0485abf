#include "lexopt/game/adam.hpp"

#include <cmath>

#include "lexopt/error.hpp"

namespace lexopt::game {

Adam::Adam(const AgentParams& params, AdamSettings settings) : settings_(settings) {
  for (const auto& [name, tensor] : params.tensors()) {
    m_.push_back(Mat::Zero(tensor->rows(), tensor->cols()));
    v_.push_back(Mat::Zero(tensor->rows(), tensor->cols()));
  }
}

void Adam::step(AgentParams& params, const AgentParams& grad) {
  auto p = params.tensors();
  const auto g = grad.tensors();
  if (p.size() != m_.size() || g.size() != m_.size()) throw InvariantError("Adam: tensor count changed");
  ++t_;
  const double b1 = settings_.beta1;
  const double b2 = settings_.beta2;
  const double c1 = 1.0 - std::pow(b1, static_cast<double>(t_));
  const double c2 = 1.0 - std::pow(b2, static_cast<double>(t_));
  for (std::size_t k = 0; k < m_.size(); ++k) {
    Mat& w = *p[k].second;
    const Mat& dw = *g[k].second;
    if (dw.rows() != w.rows() || dw.cols() != w.cols()) throw InvariantError("Adam: gradient shape mismatch");
    m_[k] = b1 * m_[k] + (1.0 - b1) * dw;
    v_[k] = b2 * v_[k] + (1.0 - b2) * dw.cwiseProduct(dw);
    w.array() -= settings_.learning_rate * (m_[k].array() / c1) /
                 ((v_[k].array() / c2).sqrt() + settings_.epsilon);
  }
}

}  // namespace lexopt::game
