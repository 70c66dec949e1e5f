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

#include "privf/erasure.hpp"

#include <set>

#include "privf/errors.hpp"

namespace privf {

namespace {

constexpr std::size_t kMaxPairs = 20'000'000;

void validate(const FeatureSchema& schema) {
  if (schema.features.empty()) {
    throw PreconditionError("erasure schema needs at least one feature");
  }
  std::set<std::string> names;
  for (const auto& f : schema.features) {
    if (f.values.empty()) {
      throw PreconditionError("erasure feature '" + f.name +
                              "' has no values");
    }
    if (!names.insert(f.name).second) {
      throw DataError("duplicate feature name '" + f.name + "'");
    }
    std::set<std::string> vals;
    for (const auto& v : f.values) {
      if (v == schema.erasure_symbol) {
        throw DataError("feature '" + f.name +
                        "' uses the erasure placeholder as a value");
      }
      if (!vals.insert(v).second) {
        throw DataError("feature '" + f.name + "' has duplicate value '" + v +
                        "'");
      }
    }
  }
}

// Enumerate the product of per-feature value lists in lexicographic order
// (first feature most significant), labels joined with '|'.
std::vector<std::string> product_labels(
    const std::vector<std::vector<std::string>>& per_feature) {
  std::vector<std::string> labels{""};
  for (std::size_t f = 0; f < per_feature.size(); ++f) {
    std::vector<std::string> next;
    next.reserve(labels.size() * per_feature[f].size());
    for (const auto& prefix : labels) {
      for (const auto& v : per_feature[f]) {
        next.push_back(f == 0 ? v : prefix + "|" + v);
      }
    }
    labels = std::move(next);
  }
  return labels;
}

std::vector<std::size_t> decode(std::size_t index,
                                const std::vector<std::size_t>& radix) {
  std::vector<std::size_t> digits(radix.size(), 0);
  for (std::size_t f = radix.size(); f-- > 0;) {
    digits[f] = index % radix[f];
    index /= radix[f];
  }
  return digits;
}

}  // namespace

std::pair<Alphabet, Alphabet> build_erasure_alphabet(
    const FeatureSchema& schema) {
  validate(schema);
  std::vector<std::vector<std::string>> in_values, out_values;
  for (const auto& f : schema.features) {
    in_values.push_back(f.values);
    auto with_erasure = f.values;
    with_erasure.push_back(schema.erasure_symbol);
    out_values.push_back(std::move(with_erasure));
  }
  return {Alphabet(product_labels(in_values)),
          Alphabet(product_labels(out_values))};
}

DistortionMatrix erasure_distortion(const FeatureSchema& schema) {
  auto [b_alpha, bhat_alpha] = build_erasure_alphabet(schema);
  const std::size_t nb = b_alpha.size();
  const std::size_t no = bhat_alpha.size();
  if (nb * no > kMaxPairs) {
    throw DataError("erasure alphabet too large: " + std::to_string(nb) +
                    "x" + std::to_string(no) + " pairs");
  }
  const std::size_t nf = schema.feature_count();
  std::vector<std::size_t> in_radix(nf), out_radix(nf);
  for (std::size_t f = 0; f < nf; ++f) {
    in_radix[f] = schema.features[f].values.size();
    out_radix[f] = in_radix[f] + 1;  // erasure placeholder is the last digit
  }

  Matrix cost(nb, no, 0.0);
  BoolMatrix allowed(nb, no, false);
  for (std::size_t b = 0; b < nb; ++b) {
    auto b_digits = decode(b, in_radix);
    for (std::size_t o = 0; o < no; ++o) {
      auto o_digits = decode(o, out_radix);
      std::size_t erased = 0;
      bool match = true;
      for (std::size_t f = 0; f < nf; ++f) {
        if (o_digits[f] == in_radix[f]) {
          ++erased;
        } else if (o_digits[f] != b_digits[f]) {
          match = false;
          break;
        }
      }
      if (match) {
        allowed.set(b, o, true);
        cost(b, o) = static_cast<double>(erased);
      }
    }
  }
  return DistortionMatrix(std::move(b_alpha), std::move(bhat_alpha),
                          std::move(cost), std::move(allowed));
}

}  // namespace privf
