//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <map>
#include <string>
#include <vector>

#include "moltext/core/matrix.hpp"
#include "moltext/core/rng.hpp"

namespace moltext::nn {

/// Named dense parameters with matching gradient slots. Iteration is in
/// name order, so optimizer updates and checkpoints are deterministic.
class ParameterStore {
public:
  core::Matrix& create(const std::string& name, std::size_t rows, std::size_t cols);

  bool has(const std::string& name) const { return values_.count(name) != 0; }
  core::Matrix& value(const std::string& name);
  const core::Matrix& value(const std::string& name) const;
  core::Matrix& grad(const std::string& name);
  const core::Matrix& grad(const std::string& name) const;

  void zero_grads();

  std::vector<std::string> names() const;
  std::size_t scalar_count() const;

  const std::map<std::string, core::Matrix>& values() const { return values_; }

private:
  std::map<std::string, core::Matrix> values_;
  std::map<std::string, core::Matrix> grads_;
};

/// Creates `<prefix>.w` [fan_in, fan_out] with uniform fan-in scaled entries
/// (limit sqrt(6/fan_in)) and a zero bias `<prefix>.b` [1, fan_out].
void init_linear(ParameterStore& store, const std::string& prefix, std::size_t fan_in,
                 std::size_t fan_out, core::Rng& rng);

}  // namespace moltext::nn
