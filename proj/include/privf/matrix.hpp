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
#include <vector>

namespace privf {

/// Dense row-major matrix of doubles. Deliberately minimal: the probability
/// tables in this library are small and the semantics live in the wrapper
/// types, not in linear algebra.
class Matrix {
 public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  double& operator()(std::size_t r, std::size_t c) {
    return data_[r * cols_ + c];
  }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  std::vector<double> row_sums() const {
    std::vector<double> s(rows_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) s[r] += (*this)(r, c);
    }
    return s;
  }

  std::vector<double> col_sums() const {
    std::vector<double> s(cols_, 0.0);
    for (std::size_t r = 0; r < rows_; ++r) {
      for (std::size_t c = 0; c < cols_; ++c) s[c] += (*this)(r, c);
    }
    return s;
  }

  double total() const {
    double t = 0.0;
    for (double v : data_) t += v;
    return t;
  }

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<double> data_;
};

/// Row-major boolean table used for structural support masks.
class BoolMatrix {
 public:
  BoolMatrix() : rows_(0), cols_(0) {}
  BoolMatrix(std::size_t rows, std::size_t cols, bool fill = false)
      : rows_(rows), cols_(cols), data_(rows * cols, fill ? 1 : 0) {}

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  void set(std::size_t r, std::size_t c, bool v) {
    data_[r * cols_ + c] = v ? 1 : 0;
  }
  bool operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c] != 0;
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto v : data_) n += v;
    return n;
  }

 private:
  std::size_t rows_;
  std::size_t cols_;
  std::vector<unsigned char> data_;
};

}  // namespace privf
