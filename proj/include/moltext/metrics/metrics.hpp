//
// Project moltext - Copyright 2026 the moltext authors.
// SPDX-License-Identifier: Apache-2.0
//

#pragma once

#include <cstdint>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace moltext::metrics {

/// AUROC as the Mann-Whitney statistic P(score_pos > score_neg) + half
/// credit for ties, computed by sorting in O(n log n). Throws DataError when
/// either class is missing.
double auroc(std::span<const double> scores, std::span<const int> labels);

struct PrecisionRecallF1 {
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Set-based retrieval metrics. Empty retrieved set yields precision 0 (the
/// caller is expected to warn); empty relevant set throws DataError.
PrecisionRecallF1 precision_recall_f1(const std::set<std::string>& retrieved,
                                      const std::set<std::string>& relevant);

/// Two-rater Cohen's kappa over categorical labels. Throws DataError on
/// length mismatch or on degenerate chance agreement with disagreement.
double cohens_kappa(std::span<const int> labels_a, std::span<const int> labels_b);

/// Arithmetic mean and sample (n-1) standard deviation. The deviation is 0
/// for a single value; empty input throws DataError.
std::pair<double, double> aggregate_seeds(std::span<const double> values);

}  // namespace moltext::metrics
