//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "moltext/core/matrix.hpp"

namespace moltext::core {

/// Per-node neighbor lists for a batched graph. Neighbors of node v are
/// indices[offsets[v] .. offsets[v+1]).
struct Csr {
  std::vector<std::uint32_t> offsets;
  std::vector<std::uint32_t> indices;

  std::size_t node_count() const { return offsets.empty() ? 0 : offsets.size() - 1; }

  /// Builds neighbor lists from directed edges (src, dst): src becomes a
  /// neighbor of dst. Counting sort keyed by dst, so the result and the
  /// within-node neighbor order are deterministic.
  static Csr from_edges(std::size_t n_nodes,
                        const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges);
};

// Dense kernels used by the differentiable numerics. Each kernel has a
// serial reference implementation and an OpenMP-parallel one. The parallel
// versions partition output elements across threads and keep the per-element
// summation order identical to the serial code, so both produce bitwise
// identical results at any thread count. Tests compare the two; the
// bench_kernels tool times them against each other.
//
// `accumulate` selects out += result instead of out = result.

#define MOLTEXT_DECLARE_KERNELS                                                              \
  /* out[m,n] = a[m,k] * b[k,n] */                                                           \
  void gemm_nn(const Matrix& a, const Matrix& b, Matrix& out, bool accumulate = false);     \
  /* out[m,n] = a[m,k] * b[n,k]^T */                                                         \
  void gemm_nt(const Matrix& a, const Matrix& b, Matrix& out, bool accumulate = false);     \
  /* out[m,n] = a[k,m]^T * b[k,n] */                                                         \
  void gemm_tn(const Matrix& a, const Matrix& b, Matrix& out, bool accumulate = false);     \
  /* out[v] = (1+eps)*h[v] + sum_{u in N(v)} h[u] */                                         \
  void neighbor_aggregate(const Matrix& h, const Csr& neighbors, double eps, Matrix& out,   \
                          bool accumulate = false);                                          \
  /* out[s] = sum or mean of h rows with segment id s; seg must be non-decreasing */         \
  void segment_reduce(const Matrix& h, const std::vector<std::uint32_t>& seg,                \
                      std::size_t n_segments, bool mean, Matrix& out,                        \
                      bool accumulate = false);                                              \
  /* out[v] = grad[seg[v]] (scaled by 1/|segment| when mean) */                              \
  void segment_broadcast(const Matrix& grad, const std::vector<std::uint32_t>& seg,          \
                         bool mean, Matrix& out, bool accumulate = false);                   \
  /* out = max(x, 0) */                                                                      \
  void relu(const Matrix& x, Matrix& out);                                                   \
  /* out += dy where x > 0 */                                                                \
  void relu_backward(const Matrix& x, const Matrix& dy, Matrix& out,                         \
                     bool accumulate = false);                                               \
  /* out = x with bias (1 x cols) added to every row */                                      \
  void add_rowvec(const Matrix& x, const Matrix& bias, Matrix& out);                         \
  /* out = alpha * x + out (or = alpha * x when not accumulating) */                         \
  void axpy(double alpha, const Matrix& x, Matrix& out, bool accumulate = true);             \
  /* norms[r] = l2 norm of row r */                                                          \
  void row_l2_norms(const Matrix& x, std::vector<double>& norms);                            \
  /* out[r] = x[r] * scale[r] */                                                             \
  void scale_rows(const Matrix& x, const std::vector<double>& scale, Matrix& out);           \
  /* out[r,0] = log sum_j exp(s[r,j]), optionally skipping j == r */                         \
  void logsumexp_rows(const Matrix& s, bool exclude_diag, Matrix& out);                      \
  /* out[r,j] += d[r,0] * exp(s[r,j] - lse[r,0]); diagonal skipped when excluded */          \
  void logsumexp_rows_backward(const Matrix& s, const Matrix& lse, const Matrix& d,          \
                               bool exclude_diag, Matrix& out, bool accumulate = false);

namespace serial {
MOLTEXT_DECLARE_KERNELS
}

namespace par {
MOLTEXT_DECLARE_KERNELS
}

#undef MOLTEXT_DECLARE_KERNELS

}  // namespace moltext::core
