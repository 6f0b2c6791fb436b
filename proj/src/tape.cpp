//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltext/nn/tape.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>
#include <utility>

#include "moltext/core/error.hpp"

namespace moltext::nn {

using core::Matrix;
namespace k = core::par;

Tape::Id Tape::push(Matrix value, std::function<void(Tape&)> backprop, std::string param_name) {
  Node node;
  node.grad = Matrix(value.rows(), value.cols());
  node.value = std::move(value);
  node.param_name = std::move(param_name);
  node.backprop = std::move(backprop);
  nodes_.push_back(std::move(node));
  return nodes_.size() - 1;
}

Tape::Id Tape::constant(Matrix value) {
  return push(std::move(value));
}

Tape::Id Tape::param(const ParameterStore& store, const std::string& name) {
  const auto it = param_ids_.find(name);
  if (it != param_ids_.end()) return it->second;
  const Id id = push(store.value(name), nullptr, name);
  param_ids_.emplace(name, id);
  return id;
}

Tape::Id Tape::matmul(Id a, Id b) {
  Matrix out(nodes_[a].value.rows(), nodes_[b].value.cols());
  k::gemm_nn(nodes_[a].value, nodes_[b].value, out);
  const Id self = nodes_.size();
  return push(std::move(out), [a, b, self](Tape& t) {
    k::gemm_nt(t.nodes_[self].grad, t.nodes_[b].value, t.nodes_[a].grad, true);
    k::gemm_tn(t.nodes_[a].value, t.nodes_[self].grad, t.nodes_[b].grad, true);
  });
}

Tape::Id Tape::matmul_nt(Id a, Id b) {
  Matrix out(nodes_[a].value.rows(), nodes_[b].value.rows());
  k::gemm_nt(nodes_[a].value, nodes_[b].value, out);
  const Id self = nodes_.size();
  return push(std::move(out), [a, b, self](Tape& t) {
    k::gemm_nn(t.nodes_[self].grad, t.nodes_[b].value, t.nodes_[a].grad, true);
    k::gemm_tn(t.nodes_[self].grad, t.nodes_[a].value, t.nodes_[b].grad, true);
  });
}

Tape::Id Tape::add(Id a, Id b) {
  assert(nodes_[a].value.same_shape(nodes_[b].value));
  Matrix out = nodes_[a].value;
  k::axpy(1.0, nodes_[b].value, out, true);
  const Id self = nodes_.size();
  return push(std::move(out), [a, b, self](Tape& t) {
    k::axpy(1.0, t.nodes_[self].grad, t.nodes_[a].grad, true);
    k::axpy(1.0, t.nodes_[self].grad, t.nodes_[b].grad, true);
  });
}

Tape::Id Tape::sub(Id a, Id b) {
  assert(nodes_[a].value.same_shape(nodes_[b].value));
  Matrix out = nodes_[a].value;
  k::axpy(-1.0, nodes_[b].value, out, true);
  const Id self = nodes_.size();
  return push(std::move(out), [a, b, self](Tape& t) {
    k::axpy(1.0, t.nodes_[self].grad, t.nodes_[a].grad, true);
    k::axpy(-1.0, t.nodes_[self].grad, t.nodes_[b].grad, true);
  });
}

Tape::Id Tape::scale(Id a, double c) {
  Matrix out(nodes_[a].value.rows(), nodes_[a].value.cols());
  k::axpy(c, nodes_[a].value, out, false);
  const Id self = nodes_.size();
  return push(std::move(out), [a, c, self](Tape& t) {
    k::axpy(c, t.nodes_[self].grad, t.nodes_[a].grad, true);
  });
}

Tape::Id Tape::add_rowvec(Id a, Id bias) {
  Matrix out(nodes_[a].value.rows(), nodes_[a].value.cols());
  k::add_rowvec(nodes_[a].value, nodes_[bias].value, out);
  const Id self = nodes_.size();
  return push(std::move(out), [a, bias, self](Tape& t) {
    const Matrix& g = t.nodes_[self].grad;
    k::axpy(1.0, g, t.nodes_[a].grad, true);
    Matrix& bias_grad = t.nodes_[bias].grad;
    for (std::size_t r = 0; r < g.rows(); ++r) {
      for (std::size_t c = 0; c < g.cols(); ++c) bias_grad(0, c) += g(r, c);
    }
  });
}

Tape::Id Tape::relu(Id a) {
  Matrix out(nodes_[a].value.rows(), nodes_[a].value.cols());
  k::relu(nodes_[a].value, out);
  const Id self = nodes_.size();
  return push(std::move(out), [a, self](Tape& t) {
    k::relu_backward(t.nodes_[a].value, t.nodes_[self].grad, t.nodes_[a].grad, true);
  });
}

Tape::Id Tape::row_l2_normalize(Id a) {
  const Matrix& x = nodes_[a].value;
  std::vector<double> norms;
  k::row_l2_norms(x, norms);
  for (std::size_t r = 0; r < norms.size(); ++r) {
    if (norms[r] <= 0.0 || !std::isfinite(norms[r])) {
      throw NumericError("row_l2_normalize: zero or non-finite norm at row " + std::to_string(r));
    }
  }
  std::vector<double> inverse(norms.size());
  for (std::size_t r = 0; r < norms.size(); ++r) inverse[r] = 1.0 / norms[r];
  Matrix out(x.rows(), x.cols());
  k::scale_rows(x, inverse, out);
  const Id self = nodes_.size();
  return push(std::move(out), [a, inverse, self](Tape& t) {
    const Matrix& y = t.nodes_[self].value;
    const Matrix& dy = t.nodes_[self].grad;
    Matrix& dx = t.nodes_[a].grad;
    for (std::size_t r = 0; r < y.rows(); ++r) {
      double dot = 0.0;
      for (std::size_t c = 0; c < y.cols(); ++c) dot += y(r, c) * dy(r, c);
      for (std::size_t c = 0; c < y.cols(); ++c) {
        dx(r, c) += (dy(r, c) - y(r, c) * dot) * inverse[r];
      }
    }
  });
}

Tape::Id Tape::neighbor_aggregate(Id h, core::Csr neighbors, double eps,
                                  std::optional<Id> eps_param) {
  double eps_value = eps;
  if (eps_param) {
    assert(nodes_[*eps_param].value.size() == 1);
    eps_value = nodes_[*eps_param].value(0, 0);
  }
  Matrix out(nodes_[h].value.rows(), nodes_[h].value.cols());
  k::neighbor_aggregate(nodes_[h].value, neighbors, eps_value, out);
  const Id self = nodes_.size();
  return push(std::move(out), [h, neighbors = std::move(neighbors), eps_value, eps_param,
                               self](Tape& t) {
    const Matrix& g = t.nodes_[self].grad;
    // The edge set is symmetric (both directions present), so the adjoint
    // reuses the same neighbor lists.
    k::neighbor_aggregate(g, neighbors, eps_value, t.nodes_[h].grad, true);
    if (eps_param) {
      const Matrix& x = t.nodes_[h].value;
      double acc = 0.0;
      for (std::size_t i = 0; i < x.size(); ++i) acc += x.data()[i] * g.data()[i];
      t.nodes_[*eps_param].grad(0, 0) += acc;
    }
  });
}

Tape::Id Tape::segment_reduce(Id h, std::vector<std::uint32_t> seg, std::size_t n_segments,
                              bool mean) {
  Matrix out(n_segments, nodes_[h].value.cols());
  k::segment_reduce(nodes_[h].value, seg, n_segments, mean, out);
  const Id self = nodes_.size();
  return push(std::move(out), [h, seg = std::move(seg), mean, self](Tape& t) {
    k::segment_broadcast(t.nodes_[self].grad, seg, mean, t.nodes_[h].grad, true);
  });
}

Tape::Id Tape::logsumexp_rows(Id s, bool exclude_diag) {
  Matrix out(nodes_[s].value.rows(), 1);
  k::logsumexp_rows(nodes_[s].value, exclude_diag, out);
  const Id self = nodes_.size();
  return push(std::move(out), [s, exclude_diag, self](Tape& t) {
    k::logsumexp_rows_backward(t.nodes_[s].value, t.nodes_[self].value, t.nodes_[self].grad,
                               exclude_diag, t.nodes_[s].grad, true);
  });
}

Tape::Id Tape::diag_col(Id s) {
  const Matrix& x = nodes_[s].value;
  assert(x.rows() == x.cols());
  Matrix out(x.rows(), 1);
  for (std::size_t r = 0; r < x.rows(); ++r) out(r, 0) = x(r, r);
  const Id self = nodes_.size();
  return push(std::move(out), [s, self](Tape& t) {
    const Matrix& g = t.nodes_[self].grad;
    Matrix& dx = t.nodes_[s].grad;
    for (std::size_t r = 0; r < g.rows(); ++r) dx(r, r) += g(r, 0);
  });
}

Tape::Id Tape::mean_all(Id a) {
  const Matrix& x = nodes_[a].value;
  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) total += x.data()[i];
  Matrix out(1, 1);
  out(0, 0) = total / static_cast<double>(x.size());
  const double inverse_size = 1.0 / static_cast<double>(x.size());
  const Id self = nodes_.size();
  return push(std::move(out), [a, inverse_size, self](Tape& t) {
    const double g = t.nodes_[self].grad(0, 0) * inverse_size;
    Matrix& dx = t.nodes_[a].grad;
    for (std::size_t i = 0; i < dx.size(); ++i) dx.data()[i] += g;
  });
}

Tape::Id Tape::sigmoid(Id a) {
  const Matrix& x = nodes_[a].value;
  Matrix out(x.rows(), x.cols());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double v = x.data()[i];
    out.data()[i] = v >= 0.0 ? 1.0 / (1.0 + std::exp(-v))
                             : std::exp(v) / (1.0 + std::exp(v));
  }
  const Id self = nodes_.size();
  return push(std::move(out), [a, self](Tape& t) {
    const Matrix& y = t.nodes_[self].value;
    const Matrix& dy = t.nodes_[self].grad;
    Matrix& dx = t.nodes_[a].grad;
    for (std::size_t i = 0; i < y.size(); ++i) {
      dx.data()[i] += dy.data()[i] * y.data()[i] * (1.0 - y.data()[i]);
    }
  });
}

Tape::Id Tape::bce_masked(Id logits, Matrix targets, Matrix mask) {
  const Matrix& x = nodes_[logits].value;
  assert(x.same_shape(targets) && x.same_shape(mask));
  double observed = 0.0;
  for (std::size_t i = 0; i < mask.size(); ++i) observed += mask.data()[i] != 0.0 ? 1.0 : 0.0;
  if (observed == 0.0) throw DataError("bce_masked: no observed labels");

  double total = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (mask.data()[i] == 0.0) continue;
    const double v = x.data()[i];
    const double y = targets.data()[i];
    total += std::max(v, 0.0) - v * y + std::log1p(std::exp(-std::abs(v)));
  }
  Matrix out(1, 1);
  out(0, 0) = total / observed;
  const Id self = nodes_.size();
  return push(std::move(out),
              [logits, targets = std::move(targets), mask = std::move(mask), observed,
               self](Tape& t) {
                const double g = t.nodes_[self].grad(0, 0) / observed;
                const Matrix& x = t.nodes_[logits].value;
                Matrix& dx = t.nodes_[logits].grad;
                for (std::size_t i = 0; i < x.size(); ++i) {
                  if (mask.data()[i] == 0.0) continue;
                  const double v = x.data()[i];
                  const double s = v >= 0.0 ? 1.0 / (1.0 + std::exp(-v))
                                            : std::exp(v) / (1.0 + std::exp(v));
                  dx.data()[i] += g * (s - targets.data()[i]);
                }
              });
}

void Tape::backward(Id loss) {
  if (backward_done_) throw std::logic_error("backward already run on this tape");
  if (nodes_[loss].value.size() != 1) throw std::logic_error("backward needs a scalar loss");
  backward_done_ = true;
  nodes_[loss].grad(0, 0) = 1.0;
  for (std::size_t i = nodes_.size(); i-- > 0;) {
    if (!nodes_[i].backprop) continue;
    nodes_[i].backprop(*this);
  }
}

void Tape::accumulate_param_grads(ParameterStore& store) const {
  for (const auto& [name, id] : param_ids_) {
    core::par::axpy(1.0, nodes_[id].grad, store.grad(name), true);
  }
}

}  // namespace moltext::nn
