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
#include <vector>

#include "privf/distributions.hpp"
#include "privf/solver.hpp"

namespace privf {

enum class Metric { kHamming, kL2 };

/// Distance between two coordinate vectors: coordinate-mismatch count for
/// hamming, Euclidean norm for l2. Both satisfy the triangle inequality,
/// which the quantized-distortion bound relies on.
double metric_distance(Metric metric, const std::vector<double>& x,
                       const std::vector<double>& y);

/// A clustering of the public alphabet: center representatives, the
/// assignment psi (each symbol to its nearest center, ties to the lowest
/// center index) and the covering radius max_b d(b, psi(b)).
struct Quantizer {
  Metric metric = Metric::kHamming;
  Alphabet input_alphabet;                   // B, aligned with `points`
  std::vector<std::vector<double>> points;   // per input symbol
  Alphabet center_alphabet;                  // C
  std::vector<std::vector<double>> centers;  // representative vectors
  std::vector<std::size_t> assignment;       // psi: B index -> C index
  double radius = 0.0;

  std::size_t k() const { return centers.size(); }
};

/// Cluster weighted symbol vectors into k centers.
/// l2: weighted Lloyd k-means (k-means++ seeding, 10 restarts, centroid
/// centers). hamming: greedy farthest-point k-center with medoid centers,
/// deterministic regardless of seed. Throws on k < 1 or k > |B|.
Quantizer cluster(const Alphabet& symbols,
                  const std::vector<std::vector<double>>& points,
                  const std::vector<double>& weights, std::size_t k,
                  Metric metric, std::uint64_t seed);

/// Aggregate the prior over clusters: q(a,c) = sum_{b: psi(b)=c} p(a,b).
/// Preserves the A-marginal exactly.
JointDistribution quantized_prior(const JointDistribution& prior,
                                  const Quantizer& quant);

/// Lift a mapping on centers back to the full alphabet: row b equals row
/// psi(b). Leakage of the lifted mapping under the original prior equals
/// the leakage of `q_map` under the quantized prior.
ConditionalMapping lift_mapping(const ConditionalMapping& q_map,
                                const Quantizer& quant);

/// Pairwise center distances as a distortion matrix over (C, C).
DistortionMatrix make_center_distortion(const Quantizer& quant);

struct QuantizedSolve {
  SolveResult center_result;      // solve on (C, C_hat)
  ConditionalMapping lifted;      // mapping on (B, C_hat)
  double end_to_end_distortion;   // E[d(B, C_hat)] under the prior
};

/// Solve on the quantized alphabet, lift, and report the end-to-end
/// distortion, which exceeds the budget by at most the covering radius for
/// metrics satisfying the triangle inequality.
QuantizedSolve solve_quantized(const JointDistribution& prior,
                               const Quantizer& quant,
                               const DistortionMatrix& d_centers, double delta,
                               const SolverOptions& opts = {});

}  // namespace privf
