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

#include <optional>
#include <string>
#include <vector>

#include "privf/distributions.hpp"

namespace privf {

enum class StepRule { kLineSearch, kDiminishing };
enum class InitRule { kIdentityOrNearest, kUniform, kCustom };

struct SolverOptions {
  int max_iters = 5000;
  double tol = 1e-6;  // relative objective change / dual-gap target, bits
  StepRule step_rule = StepRule::kLineSearch;
  InitRule init = InitRule::kIdentityOrNearest;
  std::optional<ConditionalMapping> init_mapping;  // used with kCustom

  // Problems with more free mapping entries than this are rejected; the
  // quantization path exists for them. Overridable via PRIVF_VAR_CAP.
  std::size_t variable_cap = 250000;

  // When the principal loop ends at a small positive objective, attempt to
  // land on an exactly independent feasible mapping (the objective's global
  // minimum is 0 whenever one exists).
  bool independence_polish = true;
  double polish_threshold_bits = 0.05;
};

struct SolveResult {
  ConditionalMapping mapping;
  double leakage_bits = 0.0;
  double achieved_distortion = 0.0;
  int iterations = 0;
  bool converged = false;
  double dual_gap = 0.0;  // certified bound on leakage minus the optimum
};

/// Partial derivatives of the leakage (bits) with respect to each mapping
/// entry: d/dm(b,o) = sum_a prior(a,b) * log2(T(a,o)/(p_A(a) t(o))) with
/// T the output joint and t its B_hat-marginal. Values of T or t below
/// 1e-12 are clamped inside this evaluation only.
Matrix leakage_gradient(const JointDistribution& prior,
                        const ConditionalMapping& map);

/// Minimize leakage I(A;B_hat) over row-stochastic mappings subject to
/// E[d] <= delta, by Frank-Wolfe over the product of simplices. The linear
/// subproblem (one coupling constraint) is solved exactly per row with a
/// bisected distortion multiplier and fractional completion.
///
/// Throws InfeasibleDeltaError when even the cheapest mapping exceeds
/// delta, and VariableCapError when the instance is over the variable cap.
SolveResult solve_privacy_mapping(const JointDistribution& prior,
                                  const DistortionMatrix& d, double delta,
                                  const SolverOptions& opts = {});

/// Minimum achievable expected distortion: every row at its cheapest
/// allowed output.
double min_achievable_distortion(const JointDistribution& prior,
                                 const DistortionMatrix& d);

/// Grid-search reference for desk-scale instances (|B|*|B_hat| <= 9,
/// resolution in {0.05, 0.02, 0.01}). Exhaustive over all row-stochastic
/// maps with entries in multiples of the resolution when that enumeration
/// fits the budget; otherwise exhaustive at the coarsest admissible
/// resolution followed by exhaustive local refinement at the requested one.
/// The returned value is always attained by a feasible grid mapping.
SolveResult brute_force_oracle(const JointDistribution& prior,
                               const DistortionMatrix& d, double delta,
                               double resolution);

struct CurvePoint {
  double delta_target = 0.0;
  double achieved_distortion = 0.0;
  double leakage_bits = 0.0;
  bool converged = false;
  bool failed = false;
  std::string error;
  std::optional<ConditionalMapping> mapping;
};

struct TradeoffCurve {
  std::vector<CurvePoint> points;
};

/// One solve per delta (nondecreasing deltas required), warm-starting each
/// point from the previous mapping. Per-point failures are recorded on the
/// point instead of aborting. Leakage is nonincreasing along the curve: if
/// a later solve comes out worse than the previous mapping (which stays
/// feasible as delta grows), the previous mapping is kept for that point.
TradeoffCurve sweep_curve(const JointDistribution& prior,
                          const DistortionMatrix& d,
                          const std::vector<double>& deltas,
                          const SolverOptions& opts = {});

}  // namespace privf
