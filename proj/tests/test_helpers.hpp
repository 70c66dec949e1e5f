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

#include <random>
#include <string>
#include <vector>

#include "privf/distributions.hpp"
#include "privf/rng.hpp"

namespace privf::testing {

inline Alphabet make_alphabet(const std::string& prefix, std::size_t n) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(prefix + std::to_string(i));
  }
  return Alphabet(labels);
}

/// Random joint with strictly positive cells (floor keeps logs tame).
inline JointDistribution random_joint(std::size_t na, std::size_t nb,
                                      std::mt19937_64& rng,
                                      double floor = 0.01) {
  Matrix mass(na, nb, 0.0);
  double total = 0.0;
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < nb; ++b) {
      double v = floor + uniform01(rng);
      mass(a, b) = v;
      total += v;
    }
  }
  for (double& v : mass.data()) v /= total;
  return JointDistribution(make_alphabet("a", na), make_alphabet("b", nb),
                           std::move(mass));
}

/// Random row-stochastic mapping with strictly positive entries.
inline ConditionalMapping random_mapping(const Alphabet& in,
                                         const Alphabet& out,
                                         std::mt19937_64& rng,
                                         double floor = 0.02) {
  Matrix rows(in.size(), out.size(), 0.0);
  for (std::size_t b = 0; b < in.size(); ++b) {
    double total = 0.0;
    for (std::size_t o = 0; o < out.size(); ++o) {
      double v = floor + uniform01(rng);
      rows(b, o) = v;
      total += v;
    }
    for (std::size_t o = 0; o < out.size(); ++o) rows(b, o) /= total;
  }
  return ConditionalMapping(in, out, std::move(rows));
}

/// Outer product of the marginals of `p` (an independent joint).
inline JointDistribution product_of_marginals(const JointDistribution& p) {
  auto pa = p.row_marginal();
  auto pb = p.col_marginal();
  Matrix mass(pa.size(), pb.size(), 0.0);
  for (std::size_t a = 0; a < pa.size(); ++a) {
    for (std::size_t b = 0; b < pb.size(); ++b) mass(a, b) = pa[a] * pb[b];
  }
  return JointDistribution(p.row_alphabet(), p.col_alphabet(),
                           std::move(mass));
}

/// Perturb a joint inside the simplex, keeping every cell positive;
/// returns a distribution whose L1 distance from `p` is at most `spread`.
inline JointDistribution perturb_joint(const JointDistribution& p,
                                       double spread, std::mt19937_64& rng) {
  Matrix mass = p.mass();
  const std::size_t cells = mass.rows() * mass.cols();
  std::vector<double> noise(cells, 0.0);
  double mean = 0.0;
  for (auto& v : noise) {
    v = uniform01(rng) - 0.5;
    mean += v;
  }
  mean /= static_cast<double>(cells);
  double scale = spread / static_cast<double>(cells);
  std::size_t i = 0;
  for (double& v : mass.data()) {
    double moved = v + scale * (noise[i++] - mean);
    v = std::max(moved, 1e-6);
  }
  double total = mass.total();
  for (double& v : mass.data()) v /= total;
  return JointDistribution(p.row_alphabet(), p.col_alphabet(),
                           std::move(mass));
}

}  // namespace privf::testing
