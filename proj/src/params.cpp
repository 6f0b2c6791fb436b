//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltext/nn/params.hpp"

#include <cmath>
#include <stdexcept>

#include "moltext/core/error.hpp"

namespace moltext::nn {

core::Matrix& ParameterStore::create(const std::string& name, std::size_t rows,
                                     std::size_t cols) {
  if (values_.count(name)) throw std::logic_error("parameter already exists: " + name);
  values_.emplace(name, core::Matrix(rows, cols));
  grads_.emplace(name, core::Matrix(rows, cols));
  return values_.at(name);
}

core::Matrix& ParameterStore::value(const std::string& name) {
  const auto it = values_.find(name);
  if (it == values_.end()) throw std::logic_error("unknown parameter: " + name);
  return it->second;
}

const core::Matrix& ParameterStore::value(const std::string& name) const {
  const auto it = values_.find(name);
  if (it == values_.end()) throw std::logic_error("unknown parameter: " + name);
  return it->second;
}

core::Matrix& ParameterStore::grad(const std::string& name) {
  const auto it = grads_.find(name);
  if (it == grads_.end()) throw std::logic_error("unknown parameter: " + name);
  return it->second;
}

const core::Matrix& ParameterStore::grad(const std::string& name) const {
  const auto it = grads_.find(name);
  if (it == grads_.end()) throw std::logic_error("unknown parameter: " + name);
  return it->second;
}

void ParameterStore::zero_grads() {
  for (auto& [name, grad] : grads_) grad.fill(0.0);
}

std::vector<std::string> ParameterStore::names() const {
  std::vector<std::string> result;
  result.reserve(values_.size());
  for (const auto& [name, value] : values_) result.push_back(name);
  return result;
}

std::size_t ParameterStore::scalar_count() const {
  std::size_t total = 0;
  for (const auto& [name, value] : values_) total += value.size();
  return total;
}

void init_linear(ParameterStore& store, const std::string& prefix, std::size_t fan_in,
                 std::size_t fan_out, core::Rng& rng) {
  core::Matrix& w = store.create(prefix + ".w", fan_in, fan_out);
  const double limit = std::sqrt(6.0 / static_cast<double>(fan_in));
  for (std::size_t r = 0; r < w.rows(); ++r) {
    for (std::size_t c = 0; c < w.cols(); ++c) {
      w(r, c) = (2.0 * rng.next_real01() - 1.0) * limit;
    }
  }
  store.create(prefix + ".b", 1, fan_out);
}

}  // namespace moltext::nn
