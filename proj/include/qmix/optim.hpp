// Adaptive-moment gradient descent.

#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

namespace qmix {

class AdamOptimizer {
 public:
  explicit AdamOptimizer(std::size_t n_params, double learning_rate = 0.05)
      : lr_(learning_rate), m_(n_params, 0.0), v_(n_params, 0.0) {}

  void step(std::vector<double>& params, const std::vector<double>& grad) {
    ++t_;
    const double b1t = 1.0 - std::pow(beta1_, t_);
    const double b2t = 1.0 - std::pow(beta2_, t_);
    for (std::size_t k = 0; k < params.size(); ++k) {
      m_[k] = beta1_ * m_[k] + (1.0 - beta1_) * grad[k];
      v_[k] = beta2_ * v_[k] + (1.0 - beta2_) * grad[k] * grad[k];
      const double mhat = m_[k] / b1t;
      const double vhat = v_[k] / b2t;
      params[k] -= lr_ * mhat / (std::sqrt(vhat) + eps_);
    }
  }

 private:
  double lr_;
  double beta1_ = 0.9;
  double beta2_ = 0.999;
  double eps_ = 1e-8;
  std::vector<double> m_, v_;
  int t_ = 0;
};

}  // namespace qmix
