//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "moltext/core/kernels.hpp"
#include "moltext/core/matrix.hpp"
#include "moltext/nn/params.hpp"

namespace moltext::nn {

/// Reverse-mode tape over dense matrices. A tape records one forward
/// computation; backward() walks it once in reverse. Tapes are single-use.
///
/// All matrix kernels run through the OpenMP variants, whose results do not
/// depend on the thread count, so gradients are bitwise reproducible.
class Tape {
public:
  using Id = std::size_t;

  /// Leaf with no gradient consumer.
  Id constant(core::Matrix value);

  /// Leaf backed by a named parameter. Repeated calls with one name return
  /// the same node, so shared weights accumulate gradients correctly.
  Id param(const ParameterStore& store, const std::string& name);

  Id matmul(Id a, Id b);     // a[m,k] * b[k,n]
  Id matmul_nt(Id a, Id b);  // a[m,k] * b[n,k]^T
  Id add(Id a, Id b);
  Id sub(Id a, Id b);
  Id scale(Id a, double c);
  Id add_rowvec(Id a, Id bias);
  Id relu(Id a);

  /// Rows scaled to unit L2 norm. Throws NumericError when a row has zero
  /// norm.
  Id row_l2_normalize(Id a);

  /// GIN aggregation (1+eps)*h[v] + sum of neighbor rows. `eps_param`, when
  /// set, must be a 1x1 node and overrides `eps`.
  Id neighbor_aggregate(Id h, core::Csr neighbors, double eps,
                        std::optional<Id> eps_param = std::nullopt);

  /// Per-graph readout over node rows; `seg` maps each row to its graph and
  /// must be non-decreasing.
  Id segment_reduce(Id h, std::vector<std::uint32_t> seg, std::size_t n_segments, bool mean);

  /// Row-wise log(sum(exp)), optionally excluding the diagonal entry.
  Id logsumexp_rows(Id s, bool exclude_diag);

  /// Main diagonal of a square matrix as a column.
  Id diag_col(Id s);

  /// Mean over all entries, as 1x1.
  Id mean_all(Id a);

  Id sigmoid(Id a);

  /// Mean binary cross-entropy over entries where mask is nonzero, from
  /// logits (numerically stable form). 1x1 output.
  Id bce_masked(Id logits, core::Matrix targets, core::Matrix mask);

  const core::Matrix& value(Id id) const { return nodes_[id].value; }
  const core::Matrix& gradient(Id id) const { return nodes_[id].grad; }

  /// Seeds d(loss)/d(loss) = 1 and propagates. `loss` must be 1x1; only one
  /// backward pass per tape.
  void backward(Id loss);

  /// Adds the gradients of parameter leaves into the store's grad slots.
  void accumulate_param_grads(ParameterStore& store) const;

private:
  struct Node {
    core::Matrix value;
    core::Matrix grad;
    std::string param_name;  // nonempty for parameter leaves
    std::function<void(Tape&)> backprop;
  };

  Id push(core::Matrix value, std::function<void(Tape&)> backprop = nullptr,
          std::string param_name = {});

  std::vector<Node> nodes_;
  std::map<std::string, Id> param_ids_;
  bool backward_done_ = false;
};

}  // namespace moltext::nn
