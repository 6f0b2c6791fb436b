//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//
// OpenMP kernels. Static schedule over output rows/elements; inner
// summation order matches the serial reference, so results are bitwise
// identical at any thread count.

#define MOLTEXT_KERNEL_NS par
#define MOLTEXT_PARALLEL_FOR _Pragma("omp parallel for schedule(static)")
#include "kernels_impl.inl"
#undef MOLTEXT_PARALLEL_FOR
#undef MOLTEXT_KERNEL_NS
