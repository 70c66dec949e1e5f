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
#include "privf/errors.hpp"

namespace privf {

/// Paired observations of (private label, public symbol label).
struct SampleTable {
  struct Record {
    std::string a;
    std::string b;
  };
  std::vector<Record> records;

  std::size_t size() const { return records.size(); }
};

/// Precondition failure that carries the offending L1 norm.
class NormPreconditionError : public PreconditionError {
 public:
  NormPreconditionError(const std::string& what, double norm)
      : PreconditionError(what), norm_(norm) {}
  double norm() const { return norm_; }

 private:
  double norm_;
};

/// Empirical joint: cell (a,b) gets #(a_i=a, b_i=b)/n. Requires n >= 1;
/// unknown labels raise DataError naming the label.
JointDistribution empirical_joint(const SampleTable& samples,
                                  const Alphabet& a_alphabet,
                                  const Alphabet& b_alphabet);

/// Additive smoothing: cell gets (count + alpha)/(n + alpha*|A||B|).
/// alpha = 0 reduces to empirical_joint (then n >= 1 is required).
JointDistribution smoothed_joint(const SampleTable& samples,
                                 const Alphabet& a_alphabet,
                                 const Alphabet& b_alphabet, double alpha);

/// Per-point labeled coordinates for the kernel-density discretizer.
struct LabeledPoints {
  std::vector<std::string> class_labels;         // one per point
  std::vector<std::vector<double>> coordinates;  // one vector per point
};

/// Per-dimension ascending bin edges; cell (i1,...,iD) covers
/// [edges[d][id], edges[d][id+1]) in each dimension.
struct KdeGrid {
  std::vector<std::vector<double>> edges;

  std::size_t dimensions() const { return edges.size(); }
  std::size_t cell_count() const;
};

/// Bandwidth selection for kde_discretize. Empty = leave-one-out
/// cross-validation per class over a fixed 10-point log-spaced grid;
/// one value = shared fixed bandwidth; one per class = individual.
struct KdeBandwidth {
  std::vector<double> values;

  static KdeBandwidth cross_validated() { return {}; }
  static KdeBandwidth fixed(double h) { return {{h}}; }
  bool is_cross_validated() const { return values.empty(); }
};

/// Discretize labeled continuous data into a joint over (class, grid cell):
/// a Gaussian product kernel per class, evaluated at cell centers, scaled
/// by the empirical class weights and renormalized. Cell labels are the
/// center coordinates joined with '|'. Classes are ordered by sorted label.
JointDistribution kde_discretize(const LabeledPoints& points,
                                 const KdeGrid& grid,
                                 const KdeBandwidth& bandwidth);

/// Cross-validated bandwidth for one class (exposed for inspection):
/// leave-one-out log-likelihood over 10 log-spaced multipliers of the mean
/// per-dimension standard deviation; ties resolve to the smaller value.
double kde_cross_validate_bandwidth(
    const std::vector<std::vector<double>>& class_points);

/// Entropy-difference bound: for ||p-q||_1 <= 1/2 over a common support of
/// size |X|, |H(p)-H(q)| <= ||p-q||_1 * log2(|X| / ||p-q||_1). Throws
/// NormPreconditionError when the norm exceeds 1/2.
double entropy_l1_bound(const std::vector<double>& p,
                        const std::vector<double>& q);

/// Consequences of optimizing under an estimated prior q instead of the
/// true p. `valid` is false when ||p-q||_1 > 1/2 (the entropy lemma's
/// precondition fails); the bound is still reported.
struct MismatchReport {
  double l1 = 0.0;               // ||p - q||_1
  double leakage_bound = 0.0;    // 3*l1*log2(|A||B|/l1), bits
  double distortion_slack = 0.0; // d_max * l1
  double distortion_bound = 0.0; // delta + distortion_slack
  bool valid = true;
};

MismatchReport mismatch_bounds(const JointDistribution& p,
                               const JointDistribution& q,
                               const DistortionMatrix& d, double delta);

/// Probability bound on a poor empirical estimate:
/// P(||q_emp - p||_1 >= eps) <= (n+1)^(|A||B|) * 2^(-2n eps^2),
/// evaluated in log2 space. Values above 1 are returned as-is (vacuous).
double sample_complexity_bound(long long n, std::size_t a_size,
                               std::size_t b_size, double eps);

/// Sign of the log-space derivative of the bound in n at the evaluated
/// point: true when the bound is locally decreasing.
bool sample_complexity_decreasing_at(long long n, std::size_t a_size,
                                     std::size_t b_size, double eps);

/// Draw n i.i.d. records from a joint distribution (label pairs).
SampleTable sample_from_joint(const JointDistribution& p, std::size_t n,
                              std::mt19937_64& rng);

}  // namespace privf
