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

#include "privf/quantizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "privf/errors.hpp"
#include "privf/info_measures.hpp"
#include "privf/rng.hpp"

namespace privf {

double metric_distance(Metric metric, const std::vector<double>& x,
                       const std::vector<double>& y) {
  if (x.size() != y.size()) {
    throw PreconditionError("metric_distance: dimension mismatch");
  }
  if (metric == Metric::kHamming) {
    double count = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] != y[i]) count += 1.0;
    }
    return count;
  }
  double sq = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    double diff = x[i] - y[i];
    sq += diff * diff;
  }
  return std::sqrt(sq);
}

namespace {

void assign_nearest(Quantizer& q) {
  const std::size_t n = q.points.size();
  q.assignment.assign(n, 0);
  q.radius = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double best = std::numeric_limits<double>::infinity();
    std::size_t best_c = 0;
    for (std::size_t c = 0; c < q.centers.size(); ++c) {
      double dist = metric_distance(q.metric, q.points[i], q.centers[c]);
      if (dist < best - 1e-15) {  // ties keep the lowest center index
        best = dist;
        best_c = c;
      }
    }
    q.assignment[i] = best_c;
    q.radius = std::max(q.radius, best);
  }
}

Quantizer identity_quantizer(const Alphabet& symbols,
                             const std::vector<std::vector<double>>& points,
                             Metric metric) {
  Quantizer q;
  q.metric = metric;
  q.input_alphabet = symbols;
  q.points = points;
  q.center_alphabet = symbols;
  q.centers = points;
  q.assignment.resize(points.size());
  for (std::size_t i = 0; i < points.size(); ++i) q.assignment[i] = i;
  q.radius = 0.0;
  return q;
}

Quantizer greedy_k_center(const Alphabet& symbols,
                          const std::vector<std::vector<double>>& points,
                          const std::vector<double>& weights, std::size_t k,
                          Metric metric) {
  const std::size_t n = points.size();
  std::vector<std::size_t> medoids;
  // Start from the heaviest symbol, then repeatedly take the point
  // farthest from the chosen set (Gonzalez; a 2-approximation in radius).
  std::size_t first = 0;
  for (std::size_t i = 1; i < n; ++i) {
    if (weights[i] > weights[first] + 1e-18) first = i;
  }
  medoids.push_back(first);
  std::vector<bool> chosen(n, false);
  chosen[first] = true;
  std::vector<double> nearest(n, std::numeric_limits<double>::infinity());
  while (medoids.size() < k) {
    for (std::size_t i = 0; i < n; ++i) {
      double dist = metric_distance(metric, points[i], points[medoids.back()]);
      nearest[i] = std::min(nearest[i], dist);
    }
    std::size_t far = 0;
    for (std::size_t i = 1; i < n; ++i) {
      if (nearest[i] > nearest[far] + 1e-15) far = i;
    }
    if (chosen[far] || nearest[far] <= 0.0) {
      // Coincident points: fall back to the first symbol not yet chosen.
      far = 0;
      while (far < n && chosen[far]) ++far;
    }
    chosen[far] = true;
    medoids.push_back(far);
  }

  Quantizer q;
  q.metric = metric;
  q.input_alphabet = symbols;
  q.points = points;
  std::vector<std::string> labels;
  for (std::size_t m : medoids) {
    labels.push_back(symbols.label(m));
    q.centers.push_back(points[m]);
  }
  q.center_alphabet = Alphabet(std::move(labels));
  assign_nearest(q);
  return q;
}

struct LloydRun {
  std::vector<std::vector<double>> centers;
  std::vector<std::size_t> assign;
  double objective = std::numeric_limits<double>::infinity();
};

LloydRun run_lloyd(const std::vector<std::vector<double>>& points,
                   const std::vector<double>& weights, std::size_t k,
                   std::mt19937_64& rng) {
  const std::size_t n = points.size();
  const std::size_t dim = points[0].size();

  // Weighted k-means++ seeding.
  std::vector<std::vector<double>> centers;
  std::vector<double> d2(n, std::numeric_limits<double>::infinity());
  auto pick_weighted = [&](const std::vector<double>& mass) {
    double total = 0.0;
    for (double v : mass) total += v;
    double u = uniform01(rng) * total;
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      acc += mass[i];
      if (u <= acc) return i;
    }
    return n - 1;
  };
  {
    std::vector<double> w = weights;
    bool all_zero = true;
    for (double v : w) all_zero = all_zero && v <= 0.0;
    if (all_zero) w.assign(n, 1.0);
    centers.push_back(points[pick_weighted(w)]);
  }
  while (centers.size() < k) {
    for (std::size_t i = 0; i < n; ++i) {
      double sq = 0.0;
      for (std::size_t d = 0; d < dim; ++d) {
        double diff = points[i][d] - centers.back()[d];
        sq += diff * diff;
      }
      d2[i] = std::min(d2[i], sq);
    }
    std::vector<double> mass(n);
    double total = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      mass[i] = std::max(weights[i], 1e-12) * d2[i];
      total += mass[i];
    }
    if (total <= 0.0) {
      // All remaining points coincide with a center; spread deterministically.
      centers.push_back(points[centers.size() % n]);
      continue;
    }
    centers.push_back(points[pick_weighted(mass)]);
  }

  std::vector<std::size_t> assign(n, 0);
  std::vector<double> dist(n, 0.0);
  for (int iter = 0; iter < 100; ++iter) {
    bool changed = false;
    for (std::size_t i = 0; i < n; ++i) {
      double best = std::numeric_limits<double>::infinity();
      std::size_t best_c = 0;
      for (std::size_t c = 0; c < k; ++c) {
        double sq = 0.0;
        for (std::size_t d = 0; d < dim; ++d) {
          double diff = points[i][d] - centers[c][d];
          sq += diff * diff;
        }
        if (sq < best - 1e-18) {
          best = sq;
          best_c = c;
        }
      }
      dist[i] = best;
      if (assign[i] != best_c) {
        assign[i] = best_c;
        changed = true;
      }
    }

    // Weighted means; repair one empty cluster per iteration from the
    // farthest point.
    std::vector<std::vector<double>> sums(k, std::vector<double>(dim, 0.0));
    std::vector<double> mass(k, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      double w = std::max(weights[i], 1e-12);
      mass[assign[i]] += w;
      for (std::size_t d = 0; d < dim; ++d) {
        sums[assign[i]][d] += w * points[i][d];
      }
    }
    bool repaired = false;
    for (std::size_t c = 0; c < k; ++c) {
      if (mass[c] > 0.0) {
        for (std::size_t d = 0; d < dim; ++d) centers[c][d] = sums[c][d] / mass[c];
      } else if (!repaired) {
        std::size_t far = 0;
        for (std::size_t i = 1; i < n; ++i) {
          if (dist[i] > dist[far] + 1e-18) far = i;
        }
        centers[c] = points[far];
        repaired = true;
        changed = true;
      }
    }
    if (!changed && iter > 0) break;
  }

  LloydRun out;
  out.centers = std::move(centers);
  out.assign = std::move(assign);
  out.objective = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double sq = 0.0;
    for (std::size_t d = 0; d < dim; ++d) {
      double diff = points[i][d] - out.centers[out.assign[i]][d];
      sq += diff * diff;
    }
    out.objective += std::max(weights[i], 0.0) * sq;
  }
  return out;
}

Quantizer weighted_kmeans(const Alphabet& symbols,
                          const std::vector<std::vector<double>>& points,
                          const std::vector<double>& weights, std::size_t k,
                          std::uint64_t seed) {
  LloydRun best;
  for (std::uint64_t restart = 0; restart < 10; ++restart) {
    std::mt19937_64 rng(seed + restart * 0x9e3779b97f4a7c15ull);
    LloydRun run = run_lloyd(points, weights, k, rng);
    if (run.objective < best.objective - 1e-15) best = std::move(run);
  }

  Quantizer q;
  q.metric = Metric::kL2;
  q.input_alphabet = symbols;
  q.points = points;
  q.centers = best.centers;
  std::vector<std::string> labels;
  for (std::size_t c = 0; c < k; ++c) labels.push_back("c" + std::to_string(c));
  q.center_alphabet = Alphabet(std::move(labels));
  assign_nearest(q);
  return q;
}

}  // namespace

Quantizer cluster(const Alphabet& symbols,
                  const std::vector<std::vector<double>>& points,
                  const std::vector<double>& weights, std::size_t k,
                  Metric metric, std::uint64_t seed) {
  const std::size_t n = points.size();
  if (n == 0 || symbols.size() != n || weights.size() != n) {
    throw PreconditionError("cluster: inconsistent symbols/points/weights");
  }
  const std::size_t dim = points[0].size();
  for (const auto& p : points) {
    if (p.size() != dim) {
      throw PreconditionError("cluster: point dimension mismatch");
    }
  }
  if (k < 1 || k > n) {
    throw PreconditionError("cluster: k must satisfy 1 <= k <= |B|, got k=" +
                            std::to_string(k) + ", |B|=" + std::to_string(n));
  }
  if (k == n) return identity_quantizer(symbols, points, metric);
  if (metric == Metric::kHamming) {
    return greedy_k_center(symbols, points, weights, k, metric);
  }
  return weighted_kmeans(symbols, points, weights, k, seed);
}

JointDistribution quantized_prior(const JointDistribution& prior,
                                  const Quantizer& quant) {
  if (prior.col_alphabet() != quant.input_alphabet) {
    throw AlphabetMismatchError(
        "quantizer input alphabet does not match the prior");
  }
  const std::size_t na = prior.row_alphabet().size();
  Matrix mass(na, quant.k(), 0.0);
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < quant.input_alphabet.size(); ++b) {
      mass(a, quant.assignment[b]) += prior(a, b);
    }
  }
  return JointDistribution(prior.row_alphabet(), quant.center_alphabet,
                           std::move(mass));
}

ConditionalMapping lift_mapping(const ConditionalMapping& q_map,
                                const Quantizer& quant) {
  if (q_map.in_alphabet() != quant.center_alphabet) {
    throw AlphabetMismatchError(
        "mapping to lift is not indexed by the quantizer's centers");
  }
  const std::size_t nb = quant.input_alphabet.size();
  const std::size_t no = q_map.out_alphabet().size();
  Matrix rows(nb, no, 0.0);
  std::optional<BoolMatrix> mask;
  if (q_map.support_mask()) mask.emplace(nb, no, false);
  for (std::size_t b = 0; b < nb; ++b) {
    std::size_t c = quant.assignment[b];
    for (std::size_t o = 0; o < no; ++o) {
      rows(b, o) = q_map(c, o);
      if (mask) mask->set(b, o, (*q_map.support_mask())(c, o));
    }
  }
  return ConditionalMapping(quant.input_alphabet, q_map.out_alphabet(),
                            std::move(rows), std::move(mask));
}

DistortionMatrix make_center_distortion(const Quantizer& quant) {
  const std::size_t k = quant.k();
  Matrix cost(k, k, 0.0);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      cost(i, j) = metric_distance(quant.metric, quant.centers[i],
                                   quant.centers[j]);
    }
  }
  return DistortionMatrix(quant.center_alphabet, quant.center_alphabet,
                          std::move(cost));
}

QuantizedSolve solve_quantized(const JointDistribution& prior,
                               const Quantizer& quant,
                               const DistortionMatrix& d_centers, double delta,
                               const SolverOptions& opts) {
  if (d_centers.in_alphabet() != quant.center_alphabet) {
    throw AlphabetMismatchError(
        "center distortion is not indexed by the quantizer's centers");
  }
  if (d_centers.out_alphabet() != quant.center_alphabet) {
    throw AlphabetMismatchError(
        "quantized solves require C_hat = C so end-to-end distortion is "
        "defined");
  }
  JointDistribution q_prior = quantized_prior(prior, quant);
  SolveResult res = solve_privacy_mapping(q_prior, d_centers, delta, opts);
  ConditionalMapping lifted = lift_mapping(res.mapping, quant);

  const auto pb = prior.col_marginal();
  double end_to_end = 0.0;
  for (std::size_t b = 0; b < quant.input_alphabet.size(); ++b) {
    if (pb[b] == 0.0) continue;
    for (std::size_t o = 0; o < quant.k(); ++o) {
      double m = lifted(b, o);
      if (m == 0.0) continue;
      end_to_end +=
          pb[b] * m * metric_distance(quant.metric, quant.points[b],
                                      quant.centers[o]);
    }
  }
  if (end_to_end > delta + quant.radius + 1e-6) {
    throw Error("end-to-end distortion " + std::to_string(end_to_end) +
                " exceeds delta + radius; the metric must satisfy the "
                "triangle inequality");
  }
  return QuantizedSolve{std::move(res), std::move(lifted), end_to_end};
}

}  // namespace privf
