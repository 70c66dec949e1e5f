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

#include "privf/distributions.hpp"

#include <cmath>
#include <limits>

#include "privf/errors.hpp"

namespace privf {

namespace {

void check_shape(const Alphabet& rows, const Alphabet& cols, const Matrix& m,
                 const char* what) {
  if (m.rows() != rows.size() || m.cols() != cols.size()) {
    throw DataError(std::string(what) + ": table shape " +
                    std::to_string(m.rows()) + "x" + std::to_string(m.cols()) +
                    " does not match alphabets " +
                    std::to_string(rows.size()) + "x" +
                    std::to_string(cols.size()));
  }
}

}  // namespace

JointDistribution::JointDistribution(Alphabet row_alphabet,
                                     Alphabet col_alphabet, Matrix mass)
    : JointDistribution(std::move(row_alphabet), std::move(col_alphabet),
                        std::move(mass), /*renormalize=*/false,
                        kStrictSumTol) {}

JointDistribution JointDistribution::from_external(Alphabet row_alphabet,
                                                   Alphabet col_alphabet,
                                                   Matrix mass) {
  return JointDistribution(std::move(row_alphabet), std::move(col_alphabet),
                           std::move(mass), /*renormalize=*/true,
                           kIngestSumTol);
}

JointDistribution::JointDistribution(Alphabet row_alphabet,
                                     Alphabet col_alphabet, Matrix mass,
                                     bool renormalize, double tol)
    : row_alphabet_(std::move(row_alphabet)),
      col_alphabet_(std::move(col_alphabet)),
      mass_(std::move(mass)) {
  check_shape(row_alphabet_, col_alphabet_, mass_, "JointDistribution");
  for (double v : mass_.data()) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidDistributionError(
          "joint distribution has a negative or non-finite entry");
    }
  }
  double total = mass_.total();
  if (std::abs(total - 1.0) > tol) {
    throw InvalidDistributionError(
        "joint distribution mass sums to " + std::to_string(total) +
        ", expected 1 within " + std::to_string(tol));
  }
  if (renormalize && total > 0.0) {
    for (double& v : mass_.data()) v /= total;
  }
}

ConditionalMapping::ConditionalMapping(Alphabet in_alphabet,
                                       Alphabet out_alphabet, Matrix rows,
                                       std::optional<BoolMatrix> support_mask)
    : ConditionalMapping(std::move(in_alphabet), std::move(out_alphabet),
                         std::move(rows), std::move(support_mask),
                         /*renormalize=*/false, kStrictSumTol) {}

ConditionalMapping ConditionalMapping::from_external(
    Alphabet in_alphabet, Alphabet out_alphabet, Matrix rows,
    std::optional<BoolMatrix> support_mask) {
  return ConditionalMapping(std::move(in_alphabet), std::move(out_alphabet),
                            std::move(rows), std::move(support_mask),
                            /*renormalize=*/true, kIngestSumTol);
}

ConditionalMapping::ConditionalMapping(Alphabet in_alphabet,
                                       Alphabet out_alphabet, Matrix rows,
                                       std::optional<BoolMatrix> support_mask,
                                       bool renormalize, double tol)
    : in_alphabet_(std::move(in_alphabet)),
      out_alphabet_(std::move(out_alphabet)),
      rows_(std::move(rows)),
      support_mask_(std::move(support_mask)) {
  check_shape(in_alphabet_, out_alphabet_, rows_, "ConditionalMapping");
  if (support_mask_ && (support_mask_->rows() != rows_.rows() ||
                        support_mask_->cols() != rows_.cols())) {
    throw DataError("support mask shape does not match mapping table");
  }
  for (std::size_t b = 0; b < rows_.rows(); ++b) {
    double sum = 0.0;
    for (std::size_t o = 0; o < rows_.cols(); ++o) {
      double v = rows_(b, o);
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw InvalidDistributionError(
            "mapping row " + in_alphabet_.label(b) +
            " has a negative or non-finite entry");
      }
      if (support_mask_ && !(*support_mask_)(b, o) && v != 0.0) {
        throw InvalidDistributionError(
            "mapping row " + in_alphabet_.label(b) +
            " puts mass outside its support mask");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > tol) {
      throw InvalidDistributionError(
          "mapping row " + in_alphabet_.label(b) + " sums to " +
          std::to_string(sum) + ", expected 1 within " + std::to_string(tol));
    }
    if (renormalize && sum > 0.0) {
      for (std::size_t o = 0; o < rows_.cols(); ++o) rows_(b, o) /= sum;
    }
  }
}

ConditionalMapping ConditionalMapping::identity(const Alphabet& alphabet) {
  Matrix rows(alphabet.size(), alphabet.size(), 0.0);
  for (std::size_t i = 0; i < alphabet.size(); ++i) rows(i, i) = 1.0;
  return ConditionalMapping(alphabet, alphabet, std::move(rows));
}

ConditionalMapping ConditionalMapping::constant(const Alphabet& in_alphabet,
                                                const Alphabet& out_alphabet,
                                                std::size_t out) {
  Matrix rows(in_alphabet.size(), out_alphabet.size(), 0.0);
  for (std::size_t i = 0; i < in_alphabet.size(); ++i) rows(i, out) = 1.0;
  return ConditionalMapping(in_alphabet, out_alphabet, std::move(rows));
}

DistortionMatrix::DistortionMatrix(Alphabet in_alphabet, Alphabet out_alphabet,
                                   Matrix cost, BoolMatrix allowed)
    : in_alphabet_(std::move(in_alphabet)),
      out_alphabet_(std::move(out_alphabet)),
      cost_(std::move(cost)),
      allowed_(std::move(allowed)),
      d_max_(0.0) {
  check_shape(in_alphabet_, out_alphabet_, cost_, "DistortionMatrix");
  if (allowed_.rows() != cost_.rows() || allowed_.cols() != cost_.cols()) {
    throw DataError("allowed mask shape does not match cost table");
  }
  for (std::size_t b = 0; b < cost_.rows(); ++b) {
    bool any = false;
    for (std::size_t o = 0; o < cost_.cols(); ++o) {
      if (!allowed_(b, o)) continue;
      any = true;
      double v = cost_(b, o);
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw DataError("distortion cost must be finite and nonnegative; "
                        "express forbidden pairs through the allowed mask");
      }
      if (v > d_max_) d_max_ = v;
    }
    if (!any) {
      throw DataError("distortion row '" + in_alphabet_.label(b) +
                      "' has no allowed output");
    }
  }
}

DistortionMatrix::DistortionMatrix(Alphabet in_alphabet, Alphabet out_alphabet,
                                   Matrix cost)
    : DistortionMatrix(
          in_alphabet, out_alphabet, cost,
          BoolMatrix(in_alphabet.size(), out_alphabet.size(), true)) {}

DistortionMatrix DistortionMatrix::hamming(const Alphabet& alphabet) {
  Matrix cost(alphabet.size(), alphabet.size(), 1.0);
  for (std::size_t i = 0; i < alphabet.size(); ++i) cost(i, i) = 0.0;
  return DistortionMatrix(alphabet, alphabet, std::move(cost));
}

}  // namespace privf
