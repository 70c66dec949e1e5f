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

#include "privf/info_measures.hpp"

#include <cmath>
#include <string>

#include "privf/errors.hpp"

namespace privf {

namespace {

void check_probability_vector(const std::vector<double>& p) {
  double sum = 0.0;
  for (double v : p) {
    if (!(v >= 0.0) || !std::isfinite(v)) {
      throw InvalidDistributionError(
          "probability vector has a negative or non-finite entry");
    }
    sum += v;
  }
  if (std::abs(sum - 1.0) > kIngestSumTol) {
    throw InvalidDistributionError("probability vector sums to " +
                                   std::to_string(sum));
  }
}

void check_same_alphabets(const JointDistribution& p,
                          const JointDistribution& q) {
  if (p.row_alphabet() != q.row_alphabet() ||
      p.col_alphabet() != q.col_alphabet()) {
    throw AlphabetMismatchError(
        "joint distributions are over different alphabets");
  }
}

}  // namespace

double entropy(const std::vector<double>& p) {
  check_probability_vector(p);
  double h = 0.0;
  for (double v : p) {
    if (v > 0.0) h -= v * std::log2(v);
  }
  return h < 0.0 ? 0.0 : h;  // guard -0.0 from rounding
}

double mutual_information(const JointDistribution& p) {
  const auto pa = p.row_marginal();
  const auto pb = p.col_marginal();
  double info = 0.0;
  for (std::size_t a = 0; a < pa.size(); ++a) {
    for (std::size_t b = 0; b < pb.size(); ++b) {
      double v = p(a, b);
      if (v > 0.0) info += v * std::log2(v / (pa[a] * pb[b]));
    }
  }
  return info;
}

JointDistribution compose_output_joint(const JointDistribution& prior,
                                       const ConditionalMapping& map) {
  if (prior.col_alphabet() != map.in_alphabet()) {
    throw AlphabetMismatchError(
        "mapping input alphabet does not match the prior's public alphabet");
  }
  const std::size_t na = prior.row_alphabet().size();
  const std::size_t nb = prior.col_alphabet().size();
  const std::size_t no = map.out_alphabet().size();
  Matrix out(na, no, 0.0);
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < nb; ++b) {
      double pab = prior(a, b);
      if (pab == 0.0) continue;
      for (std::size_t o = 0; o < no; ++o) {
        out(a, o) += pab * map(b, o);
      }
    }
  }
  return JointDistribution(prior.row_alphabet(), map.out_alphabet(),
                           std::move(out));
}

double leakage(const JointDistribution& prior, const ConditionalMapping& map) {
  if (prior.col_alphabet() != map.in_alphabet()) {
    throw AlphabetMismatchError(
        "mapping input alphabet does not match the prior's public alphabet");
  }
  const std::size_t na = prior.row_alphabet().size();
  const std::size_t nb = prior.col_alphabet().size();
  const std::size_t no = map.out_alphabet().size();
  const auto pa = prior.row_marginal();

  // Output joint and marginal, needed inside the log.
  Matrix t(na, no, 0.0);
  std::vector<double> t_out(no, 0.0);
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < nb; ++b) {
      double pab = prior(a, b);
      if (pab == 0.0) continue;
      for (std::size_t o = 0; o < no; ++o) t(a, o) += pab * map(b, o);
    }
  }
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t o = 0; o < no; ++o) t_out[o] += t(a, o);
  }

  double info = 0.0;
  for (std::size_t a = 0; a < na; ++a) {
    for (std::size_t b = 0; b < nb; ++b) {
      double pab = prior(a, b);
      if (pab == 0.0) continue;
      for (std::size_t o = 0; o < no; ++o) {
        double w = pab * map(b, o);
        if (w > 0.0) info += w * std::log2(t(a, o) / (pa[a] * t_out[o]));
      }
    }
  }
  return info;
}

double expected_distortion(const JointDistribution& prior,
                           const ConditionalMapping& map,
                           const DistortionMatrix& d) {
  if (prior.col_alphabet() != map.in_alphabet() ||
      map.in_alphabet() != d.in_alphabet() ||
      map.out_alphabet() != d.out_alphabet()) {
    throw AlphabetMismatchError(
        "prior, mapping and distortion alphabets do not line up");
  }
  const auto pb = prior.col_marginal();
  double total = 0.0;
  for (std::size_t b = 0; b < pb.size(); ++b) {
    for (std::size_t o = 0; o < map.out_alphabet().size(); ++o) {
      double m = map(b, o);
      if (m == 0.0) continue;
      if (!d.allowed(b, o)) {
        if (pb[b] * m > 0.0) {
          throw InfeasibleMappingError(
              "mapping puts probability " + std::to_string(m) +
              " on forbidden pair (" + map.in_alphabet().label(b) + " -> " +
              map.out_alphabet().label(o) + ")");
        }
        continue;
      }
      total += pb[b] * m * d.cost(b, o);
    }
  }
  return total;
}

double l1_distance(const JointDistribution& p, const JointDistribution& q) {
  check_same_alphabets(p, q);
  double sum = 0.0;
  for (std::size_t a = 0; a < p.row_alphabet().size(); ++a) {
    for (std::size_t b = 0; b < p.col_alphabet().size(); ++b) {
      sum += std::abs(p(a, b) - q(a, b));
    }
  }
  return sum;
}

double l1_distance(const std::vector<double>& p,
                   const std::vector<double>& q) {
  if (p.size() != q.size()) {
    throw AlphabetMismatchError("probability vectors have different lengths");
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) sum += std::abs(p[i] - q[i]);
  return sum;
}

}  // namespace privf
