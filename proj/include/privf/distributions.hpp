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

#include "privf/alphabet.hpp"
#include "privf/matrix.hpp"

namespace privf {

// Tolerances: construction from internal computation must normalize to
// 1e-9; external data may be off by up to 1e-6 and is renormalized.
inline constexpr double kStrictSumTol = 1e-9;
inline constexpr double kIngestSumTol = 1e-6;

/// Joint probability table p(A,B) over a pair of alphabets. Immutable.
class JointDistribution {
 public:
  /// Validates nonnegativity and total mass within `kStrictSumTol`.
  JointDistribution(Alphabet row_alphabet, Alphabet col_alphabet,
                    Matrix mass);

  /// Ingestion constructor: accepts totals within `kIngestSumTol` of 1 and
  /// renormalizes; rejects anything further off.
  static JointDistribution from_external(Alphabet row_alphabet,
                                         Alphabet col_alphabet, Matrix mass);

  const Alphabet& row_alphabet() const { return row_alphabet_; }
  const Alphabet& col_alphabet() const { return col_alphabet_; }
  const Matrix& mass() const { return mass_; }

  double operator()(std::size_t a, std::size_t b) const {
    return mass_(a, b);
  }

  std::vector<double> row_marginal() const { return mass_.row_sums(); }
  std::vector<double> col_marginal() const { return mass_.col_sums(); }

 private:
  JointDistribution(Alphabet row_alphabet, Alphabet col_alphabet, Matrix mass,
                    bool renormalize, double tol);

  Alphabet row_alphabet_;
  Alphabet col_alphabet_;
  Matrix mass_;
};

/// Row-stochastic conditional table p(out|in), optionally restricted to a
/// structural support mask. Entries outside the mask are exactly zero.
class ConditionalMapping {
 public:
  ConditionalMapping(Alphabet in_alphabet, Alphabet out_alphabet, Matrix rows,
                     std::optional<BoolMatrix> support_mask = std::nullopt);

  /// Ingestion constructor: row sums within `kIngestSumTol` are renormalized.
  static ConditionalMapping from_external(
      Alphabet in_alphabet, Alphabet out_alphabet, Matrix rows,
      std::optional<BoolMatrix> support_mask = std::nullopt);

  const Alphabet& in_alphabet() const { return in_alphabet_; }
  const Alphabet& out_alphabet() const { return out_alphabet_; }
  const Matrix& rows() const { return rows_; }
  const std::optional<BoolMatrix>& support_mask() const {
    return support_mask_;
  }

  double operator()(std::size_t in, std::size_t out) const {
    return rows_(in, out);
  }

  /// Identity mapping (requires in == out alphabet).
  static ConditionalMapping identity(const Alphabet& alphabet);

  /// Every input mapped to the single output symbol `out`.
  static ConditionalMapping constant(const Alphabet& in_alphabet,
                                     const Alphabet& out_alphabet,
                                     std::size_t out);

 private:
  ConditionalMapping(Alphabet in_alphabet, Alphabet out_alphabet, Matrix rows,
                     std::optional<BoolMatrix> support_mask, bool renormalize,
                     double tol);

  Alphabet in_alphabet_;
  Alphabet out_alphabet_;
  Matrix rows_;
  std::optional<BoolMatrix> support_mask_;
};

/// Per-pair distortion d(b, b_hat) >= 0; forbidden pairs are structural
/// (excluded from the support) rather than large finite sentinels.
class DistortionMatrix {
 public:
  /// `cost` entries are read only where `allowed` is true. Every row must
  /// keep at least one allowed entry.
  DistortionMatrix(Alphabet in_alphabet, Alphabet out_alphabet, Matrix cost,
                   BoolMatrix allowed);

  /// All pairs allowed.
  DistortionMatrix(Alphabet in_alphabet, Alphabet out_alphabet, Matrix cost);

  const Alphabet& in_alphabet() const { return in_alphabet_; }
  const Alphabet& out_alphabet() const { return out_alphabet_; }

  bool allowed(std::size_t in, std::size_t out) const {
    return allowed_(in, out);
  }
  /// Cost of an allowed pair. Calling this on a forbidden pair is a bug.
  double cost(std::size_t in, std::size_t out) const {
    return cost_(in, out);
  }
  const BoolMatrix& allowed_mask() const { return allowed_; }

  /// Maximum finite cost.
  double d_max() const { return d_max_; }

  /// 0/1 cost, zero on the diagonal. Requires in == out alphabet sizes.
  static DistortionMatrix hamming(const Alphabet& alphabet);

 private:
  Alphabet in_alphabet_;
  Alphabet out_alphabet_;
  Matrix cost_;
  BoolMatrix allowed_;
  double d_max_;
};

}  // namespace privf
