//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#include "moltext/metrics/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>

#include "moltext/core/error.hpp"

namespace moltext::metrics {

double auroc(std::span<const double> scores, std::span<const int> labels) {
  if (scores.size() != labels.size()) throw DataError("auroc: length mismatch");
  std::size_t n_pos = 0, n_neg = 0;
  for (int label : labels) {
    if (label == 1) {
      ++n_pos;
    } else if (label == 0) {
      ++n_neg;
    } else {
      throw DataError("auroc: labels must be 0 or 1");
    }
  }
  if (n_pos == 0 || n_neg == 0) throw DataError("auroc: needs both classes");

  std::vector<std::size_t> order(scores.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return scores[a] < scores[b]; });

  // Average ranks over tie groups; rank sums of multiples of 0.5 are exact
  // in doubles, so this agrees bitwise with pairwise counting.
  double positive_rank_sum = 0.0;
  std::size_t i = 0;
  while (i < order.size()) {
    std::size_t j = i;
    while (j < order.size() && scores[order[j]] == scores[order[i]]) ++j;
    const double average_rank = 0.5 * static_cast<double>(i + 1 + j);  // 1-based
    for (std::size_t k = i; k < j; ++k) {
      if (labels[order[k]] == 1) positive_rank_sum += average_rank;
    }
    i = j;
  }

  const double np = static_cast<double>(n_pos);
  const double nn = static_cast<double>(n_neg);
  return (positive_rank_sum - np * (np + 1.0) / 2.0) / (np * nn);
}

PrecisionRecallF1 precision_recall_f1(const std::set<std::string>& retrieved,
                                      const std::set<std::string>& relevant) {
  if (relevant.empty()) throw DataError("precision_recall_f1: empty relevant set");
  std::size_t intersection = 0;
  for (const auto& item : retrieved) {
    if (relevant.count(item)) ++intersection;
  }
  PrecisionRecallF1 result;
  result.precision = retrieved.empty()
                         ? 0.0
                         : static_cast<double>(intersection) / static_cast<double>(retrieved.size());
  result.recall = static_cast<double>(intersection) / static_cast<double>(relevant.size());
  result.f1 = (result.precision + result.recall) > 0.0
                  ? 2.0 * result.precision * result.recall / (result.precision + result.recall)
                  : 0.0;
  return result;
}

double cohens_kappa(std::span<const int> labels_a, std::span<const int> labels_b) {
  if (labels_a.size() != labels_b.size()) throw DataError("cohens_kappa: length mismatch");
  if (labels_a.empty()) throw DataError("cohens_kappa: empty input");

  const double n = static_cast<double>(labels_a.size());
  std::map<int, std::size_t> marginal_a, marginal_b;
  std::size_t agreements = 0;
  for (std::size_t i = 0; i < labels_a.size(); ++i) {
    ++marginal_a[labels_a[i]];
    ++marginal_b[labels_b[i]];
    if (labels_a[i] == labels_b[i]) ++agreements;
  }

  const double observed = static_cast<double>(agreements) / n;
  double chance = 0.0;
  for (const auto& [category, count_a] : marginal_a) {
    const auto it = marginal_b.find(category);
    if (it == marginal_b.end()) continue;
    chance += (static_cast<double>(count_a) / n) * (static_cast<double>(it->second) / n);
  }

  if (chance == 1.0) {
    if (observed == 1.0) return 1.0;
    throw DataError("cohens_kappa: degenerate marginals with disagreement");
  }
  return (observed - chance) / (1.0 - chance);
}

std::pair<double, double> aggregate_seeds(std::span<const double> values) {
  if (values.empty()) throw DataError("aggregate_seeds: empty input");
  const double n = static_cast<double>(values.size());
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= n;
  if (values.size() < 2) return {mean, 0.0};
  double ss = 0.0;
  for (double v : values) ss += (v - mean) * (v - mean);
  return {mean, std::sqrt(ss / (n - 1.0))};
}

}  // namespace moltext::metrics
