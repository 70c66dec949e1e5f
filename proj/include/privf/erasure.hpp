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

#include <string>
#include <utility>
#include <vector>

#include "privf/distributions.hpp"

namespace privf {

/// An ordered list of categorical features; the released alphabet allows
/// each feature value to be replaced by a per-schema erasure placeholder.
struct FeatureSchema {
  struct Feature {
    std::string name;
    std::vector<std::string> values;
  };
  std::vector<Feature> features;
  std::string erasure_symbol = "*";

  std::size_t feature_count() const { return features.size(); }
};

/// Input alphabet B (all value combinations) and output alphabet B_hat
/// (each feature additionally admits the erasure placeholder), both in
/// lexicographic order with the first feature most significant. Symbol
/// labels join feature values with '|'.
std::pair<Alphabet, Alphabet> build_erasure_alphabet(
    const FeatureSchema& schema);

/// Distortion counting erased positions: d(b, b_hat) = number of erasures
/// in b_hat when every non-erased position matches b; forbidden otherwise.
/// Every row has exactly 2^(#features) allowed outputs.
DistortionMatrix erasure_distortion(const FeatureSchema& schema);

}  // namespace privf
