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

#include "privf/alphabet.hpp"

#include "privf/errors.hpp"

namespace privf {

Alphabet::Alphabet(std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  index_.reserve(labels_.size());
  for (std::size_t i = 0; i < labels_.size(); ++i) {
    auto [it, inserted] = index_.emplace(labels_[i], i);
    if (!inserted) {
      throw DataError("duplicate alphabet label: '" + labels_[i] + "'");
    }
  }
}

std::optional<std::size_t> Alphabet::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Alphabet::index_of(const std::string& label) const {
  auto idx = find(label);
  if (!idx) throw DataError("unknown symbol label: '" + label + "'");
  return *idx;
}

bool Alphabet::subset_of(const Alphabet& super) const {
  for (const auto& l : labels_) {
    if (!super.contains(l)) return false;
  }
  return true;
}

}  // namespace privf
