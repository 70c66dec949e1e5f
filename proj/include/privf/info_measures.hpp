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

#include <vector>

#include "privf/distributions.hpp"

namespace privf {

// All information measures use log base 2 (bits) and the conventions
// 0*log(0) = 0 and 0*log(0/0) = 0.

/// Shannon entropy of a probability vector, in bits.
/// Entries must be >= 0 and sum to 1 within 1e-6.
double entropy(const std::vector<double>& p);

/// Mutual information I(A;B) of a joint table, in bits. Computed as the
/// direct double sum over p(a,b)*log2(p(a,b)/(p(a)p(b))).
double mutual_information(const JointDistribution& p);

/// Output joint p(A, B_hat) of pushing the prior through a mapping:
/// p(a, b_hat) = sum_b map(b_hat|b) * prior(a, b).
JointDistribution compose_output_joint(const JointDistribution& prior,
                                       const ConditionalMapping& map);

/// Information leakage I(A;B_hat) of releasing map(B) under the prior, in
/// bits. Evaluated as the direct triple sum over (a, b, b_hat); equal to
/// mutual_information(compose_output_joint(prior, map)) up to rounding.
double leakage(const JointDistribution& prior, const ConditionalMapping& map);

/// Average distortion E[d(B, B_hat)] under the prior's B-marginal and the
/// mapping. Throws InfeasibleMappingError if the mapping puts positive mass
/// on a forbidden pair.
double expected_distortion(const JointDistribution& prior,
                           const ConditionalMapping& map,
                           const DistortionMatrix& d);

/// Entrywise L1 distance between two joint tables over the same alphabets.
double l1_distance(const JointDistribution& p, const JointDistribution& q);

/// L1 distance between plain probability vectors of equal length.
double l1_distance(const std::vector<double>& p, const std::vector<double>& q);

}  // namespace privf
