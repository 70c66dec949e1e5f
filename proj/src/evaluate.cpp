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

#include "privf/evaluate.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "privf/errors.hpp"
#include "privf/info_measures.hpp"
#include "privf/rng.hpp"

namespace privf {

SampleTable apply_mapping(const SampleTable& records,
                          const ConditionalMapping& map, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  SampleTable out;
  out.records.reserve(records.size());
  for (const auto& rec : records.records) {
    std::size_t b = map.in_alphabet().index_of(rec.b);
    double u = uniform01(rng);
    double acc = 0.0;
    std::size_t pick = map.out_alphabet().size() - 1;
    for (std::size_t o = 0; o < map.out_alphabet().size(); ++o) {
      acc += map(b, o);
      if (u < acc) {
        pick = o;
        break;
      }
    }
    out.records.push_back({rec.a, map.out_alphabet().label(pick)});
  }
  return out;
}

double map_accuracy(const JointDistribution& prior,
                    const ConditionalMapping& map) {
  JointDistribution out = compose_output_joint(prior, map);
  double acc = 0.0;
  for (std::size_t o = 0; o < out.col_alphabet().size(); ++o) {
    double best = 0.0;
    for (std::size_t a = 0; a < out.row_alphabet().size(); ++a) {
      if (out(a, o) > best) best = out(a, o);  // ties keep the lowest a
    }
    acc += best;
  }
  return acc;
}

double majority_rate(const JointDistribution& prior) {
  double best = 0.0;
  for (double v : prior.row_marginal()) best = std::max(best, v);
  return best;
}

namespace {

double sigmoid(double z) { return 1.0 / (1.0 + std::exp(-z)); }

// Regularized mean cross-entropy and its gradient for a standardized
// design matrix (bias excluded from the penalty).
double logistic_loss(const std::vector<std::vector<double>>& x,
                     const std::vector<int>& y, const std::vector<double>& w,
                     double bias, double l2, std::vector<double>& grad_w,
                     double& grad_b) {
  const std::size_t n = x.size();
  const std::size_t d = w.size();
  grad_w.assign(d, 0.0);
  grad_b = 0.0;
  double loss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double z = bias;
    for (std::size_t j = 0; j < d; ++j) z += w[j] * x[i][j];
    double p = sigmoid(z);
    double target = static_cast<double>(y[i]);
    p = std::clamp(p, 1e-12, 1.0 - 1e-12);
    loss += -(target * std::log(p) + (1.0 - target) * std::log(1.0 - p));
    double err = p - target;
    for (std::size_t j = 0; j < d; ++j) grad_w[j] += err * x[i][j];
    grad_b += err;
  }
  double inv_n = 1.0 / static_cast<double>(n);
  loss *= inv_n;
  grad_b *= inv_n;
  for (std::size_t j = 0; j < d; ++j) {
    grad_w[j] = grad_w[j] * inv_n + l2 * w[j];
    loss += 0.5 * l2 * w[j] * w[j];
  }
  return loss;
}

}  // namespace

std::vector<double> logreg_cv_scores(
    const std::vector<std::vector<double>>& features,
    const std::vector<int>& labels, const LogregOptions& opts,
    std::uint64_t seed) {
  const std::size_t n = features.size();
  if (n == 0 || labels.size() != n) {
    throw PreconditionError("logreg: empty or inconsistent inputs");
  }
  const std::size_t d = features[0].size();
  for (const auto& f : features) {
    if (f.size() != d) {
      throw PreconditionError("logreg: feature dimension mismatch");
    }
  }
  if (opts.folds < 2 || static_cast<std::size_t>(opts.folds) > n) {
    throw PreconditionError("logreg: folds must be in [2, n]");
  }

  std::mt19937_64 rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = n; i > 1; --i) {  // Fisher-Yates with our own draws
    std::size_t j = uniform_index(rng, i);
    std::swap(order[i - 1], order[j]);
  }
  std::vector<int> fold_of(n);
  for (std::size_t i = 0; i < n; ++i) {
    fold_of[order[i]] = static_cast<int>(i % opts.folds);
  }

  std::vector<double> scores(n, 0.0);
  for (int fold = 0; fold < opts.folds; ++fold) {
    std::vector<std::size_t> train, test;
    for (std::size_t i = 0; i < n; ++i) {
      (fold_of[i] == fold ? test : train).push_back(i);
    }
    if (train.empty() || test.empty()) continue;

    int positives = 0;
    for (std::size_t i : train) positives += labels[i];
    if (positives == 0 || positives == static_cast<int>(train.size())) {
      throw PreconditionError(
          "logreg: training fold " + std::to_string(fold) +
          " contains a single class; stratify the folds or reshuffle");
    }

    // Standardize with training statistics.
    std::vector<double> mean(d, 0.0), stdev(d, 0.0);
    for (std::size_t i : train) {
      for (std::size_t j = 0; j < d; ++j) mean[j] += features[i][j];
    }
    for (std::size_t j = 0; j < d; ++j) {
      mean[j] /= static_cast<double>(train.size());
    }
    for (std::size_t i : train) {
      for (std::size_t j = 0; j < d; ++j) {
        double diff = features[i][j] - mean[j];
        stdev[j] += diff * diff;
      }
    }
    for (std::size_t j = 0; j < d; ++j) {
      stdev[j] = std::sqrt(stdev[j] / static_cast<double>(train.size()));
      if (stdev[j] < 1e-12) stdev[j] = 1.0;
    }
    std::vector<std::vector<double>> xt(train.size(),
                                        std::vector<double>(d, 0.0));
    std::vector<int> yt(train.size());
    for (std::size_t r = 0; r < train.size(); ++r) {
      yt[r] = labels[train[r]];
      for (std::size_t j = 0; j < d; ++j) {
        xt[r][j] = (features[train[r]][j] - mean[j]) / stdev[j];
      }
    }

    std::vector<double> w(d, 0.0), grad_w(d, 0.0);
    double bias = 0.0, grad_b = 0.0;
    double lr = opts.learning_rate;
    double loss = logistic_loss(xt, yt, w, bias, opts.l2_penalty, grad_w,
                                grad_b);
    for (int it = 0; it < opts.max_iters; ++it) {
      std::vector<double> w_try = w;
      for (std::size_t j = 0; j < d; ++j) w_try[j] -= lr * grad_w[j];
      double bias_try = bias - lr * grad_b;
      std::vector<double> grad_w_try(d, 0.0);
      double grad_b_try = 0.0;
      double loss_try = logistic_loss(xt, yt, w_try, bias_try,
                                      opts.l2_penalty, grad_w_try, grad_b_try);
      if (loss_try < loss) {
        double change = loss - loss_try;
        w = std::move(w_try);
        bias = bias_try;
        grad_w = std::move(grad_w_try);
        grad_b = grad_b_try;
        loss = loss_try;
        if (change < 1e-12 * std::max(1.0, loss)) break;
      } else {
        lr *= 0.5;
        if (lr < 1e-12) break;
      }
    }

    for (std::size_t i : test) {
      double z = bias;
      for (std::size_t j = 0; j < d; ++j) {
        z += w[j] * (features[i][j] - mean[j]) / stdev[j];
      }
      scores[i] = sigmoid(z);
    }
  }
  return scores;
}

RocCurve roc(const std::vector<double>& scores, const std::vector<int>& labels) {
  const std::size_t n = scores.size();
  if (n == 0 || labels.size() != n) {
    throw PreconditionError("roc: empty or inconsistent inputs");
  }
  std::size_t pos = 0, neg = 0;
  for (int y : labels) (y ? pos : neg) += 1;
  if (pos == 0 || neg == 0) {
    throw PreconditionError("roc needs at least one positive and one "
                            "negative label");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });

  RocCurve curve;
  curve.points.emplace_back(0.0, 0.0);
  std::size_t tp = 0, fp = 0;
  std::size_t i = 0;
  while (i < n) {
    double threshold = scores[order[i]];
    while (i < n && scores[order[i]] == threshold) {
      (labels[order[i]] ? tp : fp) += 1;
      ++i;
    }
    curve.points.emplace_back(static_cast<double>(fp) / neg,
                              static_cast<double>(tp) / pos);
  }
  double auc = 0.0;
  for (std::size_t j = 1; j < curve.points.size(); ++j) {
    double dx = curve.points[j].first - curve.points[j - 1].first;
    auc += dx * 0.5 * (curve.points[j].second + curve.points[j - 1].second);
  }
  curve.auc = auc;
  return curve;
}

RatingsTable synth_politics(const PoliticsOptions& opts, std::uint64_t seed) {
  if (opts.n < 1) throw PreconditionError("synth_politics: n must be >= 1");
  if (opts.discriminative_fraction < 0.0 ||
      opts.discriminative_fraction > 1.0) {
    throw PreconditionError("synth_politics: fraction must lie in [0,1]");
  }
  RatingsTable table;
  table.affiliation.resize(opts.n);
  table.likes.assign(opts.n, std::vector<int>(opts.shows, 0));
  table.discriminative.assign(opts.shows, false);

  std::size_t stride = 0;
  if (opts.discriminative_fraction > 0.0) {
    stride = static_cast<std::size_t>(
        std::lround(1.0 / opts.discriminative_fraction));
    if (stride == 0) stride = 1;
  }
  std::size_t ordinal = 0;
  std::vector<double> shift(opts.shows, 0.0);
  std::vector<double> base(opts.shows, 0.5);
  for (std::size_t j = 0; j < opts.shows; ++j) {
    base[j] = 0.35 + 0.3 * static_cast<double>(j % 7) / 6.0;
    if (stride > 0 && j % stride == 0) {
      table.discriminative[j] = true;
      shift[j] = (ordinal % 2 == 0 ? 1.0 : -1.0) * opts.margin / 2.0;
      ++ordinal;
    }
  }

  std::mt19937_64 rng(seed);
  for (std::size_t i = 0; i < opts.n; ++i) {
    int cls = uniform01(rng) < opts.class_balance ? 0 : 1;
    table.affiliation[i] = cls;
    for (std::size_t j = 0; j < opts.shows; ++j) {
      double p = base[j] + (cls == 0 ? shift[j] : -shift[j]);
      p = std::clamp(p, 0.01, 0.99);
      table.likes[i][j] = uniform01(rng) < p ? 1 : 0;
    }
  }
  return table;
}

SampleTable politics_sample_table(const RatingsTable& table,
                                  std::size_t show_count) {
  if (show_count > table.shows()) {
    throw PreconditionError("politics_sample_table: show_count too large");
  }
  SampleTable out;
  out.records.reserve(table.n());
  for (std::size_t i = 0; i < table.n(); ++i) {
    std::string b;
    for (std::size_t j = 0; j < show_count; ++j) {
      if (j > 0) b += '|';
      b += table.likes[i][j] ? '1' : '0';
    }
    out.records.push_back({std::to_string(table.affiliation[i]), b});
  }
  return out;
}

}  // namespace privf
