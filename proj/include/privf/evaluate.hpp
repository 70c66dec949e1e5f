// Copyright 2026 The privf Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "privf/distributions.hpp"
#include "privf/prior_estimation.hpp"

namespace privf {

/// Release a distorted symbol per record, drawn independently from the
/// mapping row of the record's b. Deterministic for a fixed seed.
SampleTable apply_mapping(const SampleTable& records,
                          const ConditionalMapping& map, std::uint64_t seed);

/// Exact Bayes accuracy of the maximum-a-posteriori guess of A from the
/// released symbol: sum over b_hat of max_a p(a, b_hat). Ties resolve to
/// the lowest private index.
double map_accuracy(const JointDistribution& prior,
                    const ConditionalMapping& map);

/// Majority-class rate max_a p_A(a) — the MAP floor under perfect privacy.
double majority_rate(const JointDistribution& prior);

struct LogregOptions {
  int folds = 10;
  double l2_penalty = 1e-3;
  double learning_rate = 0.1;
  int max_iters = 2000;
};

/// K-fold cross-validated logistic regression, full-batch gradient descent
/// with per-fold standardization. Returns one held-out score per record.
/// Throws if a training fold ends up single-class (stratify or reshuffle).
std::vector<double> logreg_cv_scores(
    const std::vector<std::vector<double>>& features,
    const std::vector<int>& labels, const LogregOptions& opts,
    std::uint64_t seed);

struct RocCurve {
  std::vector<std::pair<double, double>> points;  // (fpr, tpr)
  double auc = 0.0;
};

/// Threshold sweep over the distinct scores, trapezoidal AUC. Needs at
/// least one positive and one negative label.
RocCurve roc(const std::vector<double>& scores, const std::vector<int>& labels);

// ---------------------------------------------------------------------------
// Synthetic ratings-vs-affiliation data. Stands in for survey data that
// cannot be redistributed: binary likes per show, with a configured
// fraction of shows whose like-probability shifts by a margin between the
// two classes (sign alternating across those shows).
// ---------------------------------------------------------------------------

struct PoliticsOptions {
  std::size_t n = 1200;
  std::size_t shows = 50;
  double discriminative_fraction = 1.0 / 3.0;
  double margin = 0.35;
  double class_balance = 0.5;  // P(class 0)
};

struct RatingsTable {
  std::vector<int> affiliation;          // 0 or 1 per user
  std::vector<std::vector<int>> likes;   // n x shows, binary
  std::vector<bool> discriminative;      // per show

  std::size_t n() const { return affiliation.size(); }
  std::size_t shows() const { return likes.empty() ? 0 : likes[0].size(); }
};

RatingsTable synth_politics(const PoliticsOptions& opts, std::uint64_t seed);

/// (a, b) records over the first `show_count` shows; b joins the binary
/// likes with '|'. Class labels are "0" and "1".
SampleTable politics_sample_table(const RatingsTable& table,
                                  std::size_t show_count);

}  // namespace privf
