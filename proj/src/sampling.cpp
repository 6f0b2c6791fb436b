//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltext/relevance/sampling.hpp"

#include <algorithm>
#include <cmath>

namespace moltext::relevance {

std::vector<double> truncated_distribution(std::span<const double> scores, double temperature,
                                           double epsilon) {
  if (temperature <= 0.0) throw UsageError("temperature must be positive");
  if (epsilon < 0.0) throw UsageError("epsilon must be non-negative");
  if (scores.empty()) throw DataError("truncated_distribution: no scores");

  const std::size_t n = scores.size();
  std::vector<double> p(n);
  double max_score = scores[0];
  for (double s : scores) max_score = std::max(max_score, s);
  double total = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    p[i] = std::exp((scores[i] - max_score) / temperature);
    total += p[i];
  }
  for (double& v : p) v /= total;

  // Probability floor epsilon/N; survivors are renormalized.
  const double floor = epsilon / static_cast<double>(n);
  double surviving = 0.0;
  for (double& v : p) {
    if (v < floor) v = 0.0;
    surviving += v;
  }
  if (surviving == 0.0) {
    // Everything fell below the floor: keep the most relevant entry.
    std::size_t argmax = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (scores[i] > scores[argmax]) argmax = i;
    }
    std::fill(p.begin(), p.end(), 0.0);
    p[argmax] = 1.0;
    return p;
  }
  for (double& v : p) v /= surviving;
  return p;
}

namespace {

std::size_t draw_from(const std::vector<double>& weights, double total, core::Rng& rng) {
  const double r = rng.next_real01() * total;
  double cumulative = 0.0;
  std::size_t last_nonzero = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] <= 0.0) continue;
    cumulative += weights[i];
    last_nonzero = i;
    if (r < cumulative) return i;
  }
  return last_nonzero;  // rounding fell off the end
}

}  // namespace

std::vector<std::size_t> epsilon_sample(std::span<const double> scores, double temperature,
                                        double epsilon, std::size_t k, core::Rng& rng) {
  if (k == 0) throw UsageError("epsilon_sample: k must be at least 1");
  std::vector<double> p = truncated_distribution(scores, temperature, epsilon);

  std::size_t support = 0;
  for (double v : p) {
    if (v > 0.0) ++support;
  }

  std::vector<std::size_t> picked;
  picked.reserve(k);
  const std::size_t draws = std::min(k, support);
  for (std::size_t d = 0; d < draws; ++d) {
    double total = 0.0;
    for (double v : p) total += v;
    const std::size_t index = draw_from(p, total, rng);
    picked.push_back(index);
    p[index] = 0.0;  // without replacement
  }
  // Fewer survivors than requested: repeat them cyclically.
  for (std::size_t i = picked.size(); i < k; ++i) {
    picked.push_back(picked[i % draws]);
  }
  return picked;
}

std::pair<std::size_t, std::size_t> sample_text_pair(const MoleculeTextEntry& entry,
                                                     Schema schema, const SamplingParams& params,
                                                     std::span<const double> scores,
                                                     core::Rng& rng) {
  const std::size_t n = entry.paragraphs.size();
  if (n == 0) throw DataError("sample_text_pair: molecule " + entry.molecule_id +
                              " has no paragraphs");
  if (n == 1) return {0, 0};

  if (schema == Schema::Uniform) {
    const std::size_t first = rng.next_below(n);
    std::size_t second = rng.next_below(n - 1);
    if (second >= first) ++second;
    return {first, second};
  }

  if (scores.size() != n) {
    throw DataError("sample_text_pair: score vector does not match paragraph count for " +
                    entry.molecule_id);
  }
  const auto picked = epsilon_sample(scores, params.temperature, params.epsilon, 2, rng);
  return {picked[0], picked[1]};
}

}  // namespace moltext::relevance
