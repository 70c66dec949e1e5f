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

#include <cstddef>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

namespace privf {

/// An ordered finite set of opaque symbol labels with O(1) label<->index
/// lookup. Labels are unique; index order is the declaration order.
class Alphabet {
 public:
  Alphabet() = default;
  explicit Alphabet(std::vector<std::string> labels);

  std::size_t size() const { return labels_.size(); }
  const std::string& label(std::size_t i) const { return labels_.at(i); }
  const std::vector<std::string>& labels() const { return labels_; }

  /// Index of a label, or nullopt if unknown.
  std::optional<std::size_t> find(const std::string& label) const;

  /// Index of a label; throws DataError naming the label if unknown.
  std::size_t index_of(const std::string& label) const;

  bool contains(const std::string& label) const {
    return find(label).has_value();
  }

  /// True when both alphabets hold the same labels in the same order.
  bool operator==(const Alphabet& other) const {
    return labels_ == other.labels_;
  }
  bool operator!=(const Alphabet& other) const { return !(*this == other); }

  /// True when every label of this alphabet appears in `super`.
  bool subset_of(const Alphabet& super) const;

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, std::size_t> index_;
};

}  // namespace privf
