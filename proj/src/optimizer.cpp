//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltext/nn/optimizer.hpp"

#include <cmath>

#include "moltext/core/error.hpp"

namespace moltext::nn {

void Optimizer::step(ParameterStore& store) {
  ++step_count_;
  for (const std::string& name : store.names()) {
    core::Matrix& value = store.value(name);
    const core::Matrix& grad = store.grad(name);
    for (std::size_t i = 0; i < grad.size(); ++i) {
      if (!std::isfinite(grad.data()[i])) {
        throw NumericError("non-finite gradient in parameter " + name);
      }
    }

    if (config_.kind == OptimizerConfig::Kind::Sgd) {
      for (std::size_t i = 0; i < value.size(); ++i) {
        value.data()[i] -= config_.learning_rate * grad.data()[i];
      }
      continue;
    }

    auto it = moments_.find(name);
    if (it == moments_.end()) {
      it = moments_
               .emplace(name, std::make_pair(core::Matrix(value.rows(), value.cols()),
                                             core::Matrix(value.rows(), value.cols())))
               .first;
    }
    core::Matrix& m = it->second.first;
    core::Matrix& v = it->second.second;
    const double b1 = config_.beta1;
    const double b2 = config_.beta2;
    const double correction1 = 1.0 - std::pow(b1, static_cast<double>(step_count_));
    const double correction2 = 1.0 - std::pow(b2, static_cast<double>(step_count_));
    for (std::size_t i = 0; i < value.size(); ++i) {
      const double g = grad.data()[i];
      m.data()[i] = b1 * m.data()[i] + (1.0 - b1) * g;
      v.data()[i] = b2 * v.data()[i] + (1.0 - b2) * g * g;
      const double m_hat = m.data()[i] / correction1;
      const double v_hat = v.data()[i] / correction2;
      value.data()[i] -= config_.learning_rate * m_hat / (std::sqrt(v_hat) + config_.epsilon);
    }
  }
}

}  // namespace moltext::nn
