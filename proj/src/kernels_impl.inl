//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//
// Kernel loop bodies, included once per variant (serial / OpenMP). The two
// variants differ only in MOLTEXT_PARALLEL_FOR on the outer loops. Every
// output element is produced by exactly one iteration of the parallelized
// loop and inner summation order never depends on the thread count, so the
// variants are bitwise identical.

#include <algorithm>
#include <cassert>
#include <cmath>
#include <limits>

#include "moltext/core/kernels.hpp"

namespace moltext::core::MOLTEXT_KERNEL_NS {

namespace {

using i64 = std::int64_t;

std::vector<std::uint32_t> segment_counts(const std::vector<std::uint32_t>& seg,
                                          std::size_t n_segments) {
  std::vector<std::uint32_t> counts(n_segments, 0);
  for (std::uint32_t s : seg) {
    assert(s < n_segments);
    ++counts[s];
  }
  return counts;
}

}  // namespace

void gemm_nn(const Matrix& a, const Matrix& b, Matrix& out, bool accumulate) {
  assert(a.cols() == b.rows());
  assert(out.rows() == a.rows() && out.cols() == b.cols());
  const i64 m = static_cast<i64>(a.rows());
  const std::size_t k_dim = a.cols();
  const std::size_t n = b.cols();
  MOLTEXT_PARALLEL_FOR
  for (i64 i = 0; i < m; ++i) {
    double* out_row = out.row(static_cast<std::size_t>(i));
    if (!accumulate) std::fill(out_row, out_row + n, 0.0);
    for (std::size_t k = 0; k < k_dim; ++k) {
      const double aik = a(static_cast<std::size_t>(i), k);
      const double* b_row = b.row(k);
      for (std::size_t j = 0; j < n; ++j) out_row[j] += aik * b_row[j];
    }
  }
}

void gemm_nt(const Matrix& a, const Matrix& b, Matrix& out, bool accumulate) {
  assert(a.cols() == b.cols());
  assert(out.rows() == a.rows() && out.cols() == b.rows());
  const i64 m = static_cast<i64>(a.rows());
  const std::size_t k_dim = a.cols();
  const std::size_t n = b.rows();
  MOLTEXT_PARALLEL_FOR
  for (i64 i = 0; i < m; ++i) {
    const double* a_row = a.row(static_cast<std::size_t>(i));
    double* out_row = out.row(static_cast<std::size_t>(i));
    for (std::size_t j = 0; j < n; ++j) {
      const double* b_row = b.row(j);
      double acc = 0.0;
      for (std::size_t k = 0; k < k_dim; ++k) acc += a_row[k] * b_row[k];
      out_row[j] = accumulate ? out_row[j] + acc : acc;
    }
  }
}

void gemm_tn(const Matrix& a, const Matrix& b, Matrix& out, bool accumulate) {
  assert(a.rows() == b.rows());
  assert(out.rows() == a.cols() && out.cols() == b.cols());
  const i64 m = static_cast<i64>(a.cols());
  const std::size_t k_dim = a.rows();
  const std::size_t n = b.cols();
  MOLTEXT_PARALLEL_FOR
  for (i64 i = 0; i < m; ++i) {
    double* out_row = out.row(static_cast<std::size_t>(i));
    if (!accumulate) std::fill(out_row, out_row + n, 0.0);
    for (std::size_t k = 0; k < k_dim; ++k) {
      const double aki = a(k, static_cast<std::size_t>(i));
      const double* b_row = b.row(k);
      for (std::size_t j = 0; j < n; ++j) out_row[j] += aki * b_row[j];
    }
  }
}

void neighbor_aggregate(const Matrix& h, const Csr& neighbors, double eps, Matrix& out,
                        bool accumulate) {
  assert(neighbors.node_count() == h.rows());
  assert(out.same_shape(h));
  const i64 n = static_cast<i64>(h.rows());
  const std::size_t d = h.cols();
  const double self_weight = 1.0 + eps;
  MOLTEXT_PARALLEL_FOR
  for (i64 v = 0; v < n; ++v) {
    const auto vv = static_cast<std::size_t>(v);
    double* out_row = out.row(vv);
    const double* h_row = h.row(vv);
    if (accumulate) {
      for (std::size_t c = 0; c < d; ++c) out_row[c] += self_weight * h_row[c];
    } else {
      for (std::size_t c = 0; c < d; ++c) out_row[c] = self_weight * h_row[c];
    }
    for (std::uint32_t e = neighbors.offsets[vv]; e < neighbors.offsets[vv + 1]; ++e) {
      const double* u_row = h.row(neighbors.indices[e]);
      for (std::size_t c = 0; c < d; ++c) out_row[c] += u_row[c];
    }
  }
}

void segment_reduce(const Matrix& h, const std::vector<std::uint32_t>& seg,
                    std::size_t n_segments, bool mean, Matrix& out, bool accumulate) {
  assert(seg.size() == h.rows());
  assert(out.rows() == n_segments && out.cols() == h.cols());
  assert(std::is_sorted(seg.begin(), seg.end()));
  // Row ranges per segment; seg is non-decreasing by construction of batches.
  std::vector<std::size_t> start(n_segments, 0), stop(n_segments, 0);
  for (std::size_t v = 0; v < seg.size(); ++v) {
    if (v == 0 || seg[v] != seg[v - 1]) start[seg[v]] = v;
    stop[seg[v]] = v + 1;
  }
  const std::size_t d = h.cols();
  const i64 ns = static_cast<i64>(n_segments);
  MOLTEXT_PARALLEL_FOR
  for (i64 s = 0; s < ns; ++s) {
    const auto ss = static_cast<std::size_t>(s);
    double* out_row = out.row(ss);
    if (!accumulate) std::fill(out_row, out_row + d, 0.0);
    const std::size_t lo = start[ss], hi = stop[ss];
    if (hi <= lo) continue;
    const double scale = mean ? 1.0 / static_cast<double>(hi - lo) : 1.0;
    for (std::size_t v = lo; v < hi; ++v) {
      const double* h_row = h.row(v);
      for (std::size_t c = 0; c < d; ++c) out_row[c] += scale * h_row[c];
    }
  }
}

void segment_broadcast(const Matrix& grad, const std::vector<std::uint32_t>& seg, bool mean,
                       Matrix& out, bool accumulate) {
  assert(seg.size() == out.rows());
  assert(grad.cols() == out.cols());
  const auto counts = segment_counts(seg, grad.rows());
  const i64 n = static_cast<i64>(out.rows());
  const std::size_t d = out.cols();
  MOLTEXT_PARALLEL_FOR
  for (i64 v = 0; v < n; ++v) {
    const auto vv = static_cast<std::size_t>(v);
    const std::uint32_t s = seg[vv];
    const double scale = mean ? 1.0 / static_cast<double>(counts[s]) : 1.0;
    const double* g_row = grad.row(s);
    double* out_row = out.row(vv);
    if (accumulate) {
      for (std::size_t c = 0; c < d; ++c) out_row[c] += scale * g_row[c];
    } else {
      for (std::size_t c = 0; c < d; ++c) out_row[c] = scale * g_row[c];
    }
  }
}

void relu(const Matrix& x, Matrix& out) {
  assert(out.same_shape(x));
  const i64 n = static_cast<i64>(x.size());
  const double* src = x.data();
  double* dst = out.data();
  MOLTEXT_PARALLEL_FOR
  for (i64 i = 0; i < n; ++i) dst[i] = src[i] > 0.0 ? src[i] : 0.0;
}

void relu_backward(const Matrix& x, const Matrix& dy, Matrix& out, bool accumulate) {
  assert(x.same_shape(dy) && x.same_shape(out));
  const i64 n = static_cast<i64>(x.size());
  const double* xs = x.data();
  const double* dys = dy.data();
  double* dst = out.data();
  MOLTEXT_PARALLEL_FOR
  for (i64 i = 0; i < n; ++i) {
    const double g = xs[i] > 0.0 ? dys[i] : 0.0;
    dst[i] = accumulate ? dst[i] + g : g;
  }
}

void add_rowvec(const Matrix& x, const Matrix& bias, Matrix& out) {
  assert(bias.rows() == 1 && bias.cols() == x.cols());
  assert(out.same_shape(x));
  const i64 m = static_cast<i64>(x.rows());
  const std::size_t d = x.cols();
  const double* b = bias.data();
  MOLTEXT_PARALLEL_FOR
  for (i64 r = 0; r < m; ++r) {
    const double* x_row = x.row(static_cast<std::size_t>(r));
    double* out_row = out.row(static_cast<std::size_t>(r));
    for (std::size_t c = 0; c < d; ++c) out_row[c] = x_row[c] + b[c];
  }
}

void axpy(double alpha, const Matrix& x, Matrix& out, bool accumulate) {
  assert(x.same_shape(out));
  const i64 n = static_cast<i64>(x.size());
  const double* src = x.data();
  double* dst = out.data();
  MOLTEXT_PARALLEL_FOR
  for (i64 i = 0; i < n; ++i) dst[i] = (accumulate ? dst[i] : 0.0) + alpha * src[i];
}

void row_l2_norms(const Matrix& x, std::vector<double>& norms) {
  norms.resize(x.rows());
  const i64 m = static_cast<i64>(x.rows());
  const std::size_t d = x.cols();
  MOLTEXT_PARALLEL_FOR
  for (i64 r = 0; r < m; ++r) {
    const double* x_row = x.row(static_cast<std::size_t>(r));
    double acc = 0.0;
    for (std::size_t c = 0; c < d; ++c) acc += x_row[c] * x_row[c];
    norms[static_cast<std::size_t>(r)] = std::sqrt(acc);
  }
}

void scale_rows(const Matrix& x, const std::vector<double>& scale, Matrix& out) {
  assert(scale.size() == x.rows());
  assert(out.same_shape(x));
  const i64 m = static_cast<i64>(x.rows());
  const std::size_t d = x.cols();
  MOLTEXT_PARALLEL_FOR
  for (i64 r = 0; r < m; ++r) {
    const auto rr = static_cast<std::size_t>(r);
    const double* x_row = x.row(rr);
    double* out_row = out.row(rr);
    for (std::size_t c = 0; c < d; ++c) out_row[c] = x_row[c] * scale[rr];
  }
}

void logsumexp_rows(const Matrix& s, bool exclude_diag, Matrix& out) {
  assert(out.rows() == s.rows() && out.cols() == 1);
  const i64 m = static_cast<i64>(s.rows());
  const std::size_t n = s.cols();
  MOLTEXT_PARALLEL_FOR
  for (i64 r = 0; r < m; ++r) {
    const auto rr = static_cast<std::size_t>(r);
    const double* row = s.row(rr);
    double max_v = -std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < n; ++j) {
      if (exclude_diag && j == rr) continue;
      max_v = std::max(max_v, row[j]);
    }
    double acc = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
      if (exclude_diag && j == rr) continue;
      acc += std::exp(row[j] - max_v);
    }
    out(rr, 0) = max_v + std::log(acc);
  }
}

void logsumexp_rows_backward(const Matrix& s, const Matrix& lse, const Matrix& d,
                             bool exclude_diag, Matrix& out, bool accumulate) {
  assert(out.same_shape(s));
  assert(lse.rows() == s.rows() && lse.cols() == 1);
  assert(d.rows() == s.rows() && d.cols() == 1);
  const i64 m = static_cast<i64>(s.rows());
  const std::size_t n = s.cols();
  MOLTEXT_PARALLEL_FOR
  for (i64 r = 0; r < m; ++r) {
    const auto rr = static_cast<std::size_t>(r);
    const double* s_row = s.row(rr);
    double* out_row = out.row(rr);
    const double lse_r = lse(rr, 0);
    const double d_r = d(rr, 0);
    for (std::size_t j = 0; j < n; ++j) {
      const bool skipped = exclude_diag && j == rr;
      const double g = skipped ? 0.0 : d_r * std::exp(s_row[j] - lse_r);
      out_row[j] = accumulate ? out_row[j] + g : g;
    }
  }
}

}  // namespace moltext::core::MOLTEXT_KERNEL_NS
