//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <map>
#include <string>
#include <utility>

#include "moltext/nn/params.hpp"

namespace moltext::nn {

struct OptimizerConfig {
  enum class Kind { Adam, Sgd } kind = Kind::Adam;
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
};

/// Adam (with bias correction) or plain SGD over every parameter in the
/// store. Throws NumericError naming the parameter when a gradient is NaN
/// or infinite.
class Optimizer {
public:
  explicit Optimizer(OptimizerConfig config) : config_(config) {}

  const OptimizerConfig& config() const { return config_; }

  void step(ParameterStore& store);

private:
  OptimizerConfig config_;
  std::map<std::string, std::pair<core::Matrix, core::Matrix>> moments_;
  long step_count_ = 0;
};

}  // namespace moltext::nn
