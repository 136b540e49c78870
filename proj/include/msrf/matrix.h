// msrf/matrix.h

// Copyright 2026 The msrf Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef MSRF_MATRIX_H_
#define MSRF_MATRIX_H_

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace msrf {

/// Dense row-major matrix of doubles. Rows are samples, columns are
/// features; `tag` names what the columns hold (e.g. "mfcc", "fc7-face").
class FeatureMatrix {
 public:
  FeatureMatrix() = default;
  FeatureMatrix(std::size_t rows, std::size_t cols, double fill = 0.0)
      : rows_(rows), cols_(cols), data_(rows * cols, fill) {}
  FeatureMatrix(std::size_t rows, std::size_t cols, std::vector<double> data);

  /// Builds a matrix from equal-length rows.
  static FeatureMatrix from_rows(const std::vector<std::vector<double>>& rows);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0; }

  double& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  double operator()(std::size_t r, std::size_t c) const {
    return data_[r * cols_ + c];
  }

  std::span<double> row(std::size_t r) {
    return {data_.data() + r * cols_, cols_};
  }
  std::span<const double> row(std::size_t r) const {
    return {data_.data() + r * cols_, cols_};
  }

  const std::vector<double>& data() const { return data_; }
  std::vector<double>& data() { return data_; }

  const std::string& tag() const { return tag_; }
  void set_tag(std::string tag) { tag_ = std::move(tag); }

  /// Rows at `indices`, in that order.
  FeatureMatrix select_rows(std::span<const std::size_t> indices) const;
  /// Columns at `indices`, in that order.
  FeatureMatrix select_cols(std::span<const std::size_t> indices) const;
  /// [this | other], row counts must match.
  FeatureMatrix hconcat(const FeatureMatrix& other) const;

  bool all_finite() const;

  bool operator==(const FeatureMatrix& other) const {
    return rows_ == other.rows_ && cols_ == other.cols_ && data_ == other.data_;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<double> data_;
  std::string tag_;
};

/// Per-column affine standardization (x - mean) / stdev. Constant columns
/// get scale 0 so they map to 0.
struct Standardizer {
  std::vector<double> mean;
  std::vector<double> inv_std;

  static Standardizer fit(const FeatureMatrix& x);
  FeatureMatrix apply(const FeatureMatrix& x) const;
  void apply_row(std::span<const double> in, std::span<double> out) const;
};

}  // namespace msrf

#endif  // MSRF_MATRIX_H_
