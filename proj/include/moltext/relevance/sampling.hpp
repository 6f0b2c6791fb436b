//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <span>
#include <utility>
#include <vector>

#include "moltext/core/rng.hpp"
#include "moltext/relevance/corpus.hpp"

namespace moltext::relevance {

/// The probability distribution epsilon sampling draws from: a temperature
/// softmax over the scores, with entries below epsilon/N zeroed and the
/// survivors renormalized. When the floor removes everything the mass falls
/// back onto the argmax. Exposed for the sampler oracle and the intrinsic
/// evaluation (its support is the deterministic "retrieved set").
std::vector<double> truncated_distribution(std::span<const double> scores, double temperature,
                                           double epsilon);

/// Draws k indices without replacement from the truncated distribution.
/// When fewer than k entries survive the floor, the survivors are exhausted
/// and then repeated cyclically to length k. Throws UsageError on
/// non-positive temperature.
std::vector<std::size_t> epsilon_sample(std::span<const double> scores, double temperature,
                                        double epsilon, std::size_t k, core::Rng& rng);

struct SamplingParams {
  double temperature = 0.1;
  double epsilon = 0.5;
};

/// Samples the two text fragments for one molecule. Uniform draws a pair
/// without replacement (duplicating a lone paragraph); the scored schemas
/// use epsilon sampling with k=2 over `scores` (precomputed per-paragraph
/// scores; required for non-uniform schemas).
std::pair<std::size_t, std::size_t> sample_text_pair(const MoleculeTextEntry& entry,
                                                     Schema schema, const SamplingParams& params,
                                                     std::span<const double> scores,
                                                     core::Rng& rng);

}  // namespace moltext::relevance
