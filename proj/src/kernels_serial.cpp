//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//
// Serial reference kernels. Kept for correctness testing against the
// OpenMP variants and for the kernel benchmark.

#define MOLTEXT_KERNEL_NS serial
#define MOLTEXT_PARALLEL_FOR
#include "kernels_impl.inl"
#undef MOLTEXT_PARALLEL_FOR
#undef MOLTEXT_KERNEL_NS

#include <numeric>

namespace moltext::core {

Csr Csr::from_edges(std::size_t n_nodes,
                    const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
  Csr csr;
  csr.offsets.assign(n_nodes + 1, 0);
  for (const auto& [src, dst] : edges) {
    (void)src;
    ++csr.offsets[dst + 1];
  }
  std::partial_sum(csr.offsets.begin(), csr.offsets.end(), csr.offsets.begin());
  csr.indices.resize(edges.size());
  std::vector<std::uint32_t> cursor(csr.offsets.begin(), csr.offsets.end() - 1);
  for (const auto& [src, dst] : edges) {
    csr.indices[cursor[dst]++] = src;
  }
  return csr;
}

}  // namespace moltext::core
