// msrf/matrix.cc

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

#include "msrf/matrix.h"

#include <algorithm>
#include <cmath>

#include "msrf/common.h"

namespace msrf {

FeatureMatrix::FeatureMatrix(std::size_t rows, std::size_t cols,
                             std::vector<double> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "matrix data size " + std::to_string(data_.size()) +
                    " != " + std::to_string(rows_) + "x" +
                    std::to_string(cols_));
  }
}

FeatureMatrix FeatureMatrix::from_rows(
    const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) return {};
  FeatureMatrix m(rows.size(), rows[0].size());
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != m.cols_) {
      throw Error(ErrorCode::kDimensionMismatch, "ragged rows");
    }
    std::copy(rows[r].begin(), rows[r].end(), m.row(r).begin());
  }
  return m;
}

FeatureMatrix FeatureMatrix::select_rows(
    std::span<const std::size_t> indices) const {
  FeatureMatrix out(indices.size(), cols_);
  for (std::size_t i = 0; i < indices.size(); ++i) {
    auto src = row(indices[i]);
    std::copy(src.begin(), src.end(), out.row(i).begin());
  }
  out.tag_ = tag_;
  return out;
}

FeatureMatrix FeatureMatrix::select_cols(
    std::span<const std::size_t> indices) const {
  FeatureMatrix out(rows_, indices.size());
  for (std::size_t r = 0; r < rows_; ++r) {
    const double* src = data_.data() + r * cols_;
    double* dst = out.data_.data() + r * indices.size();
    for (std::size_t j = 0; j < indices.size(); ++j) dst[j] = src[indices[j]];
  }
  out.tag_ = tag_;
  return out;
}

FeatureMatrix FeatureMatrix::hconcat(const FeatureMatrix& other) const {
  if (rows_ != other.rows_) {
    throw Error(ErrorCode::kDimensionMismatch, "hconcat row count mismatch");
  }
  FeatureMatrix out(rows_, cols_ + other.cols_);
  for (std::size_t r = 0; r < rows_; ++r) {
    auto a = row(r);
    auto b = other.row(r);
    auto dst = out.row(r);
    std::copy(a.begin(), a.end(), dst.begin());
    std::copy(b.begin(), b.end(), dst.begin() + cols_);
  }
  return out;
}

bool FeatureMatrix::all_finite() const {
  for (double v : data_) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

Standardizer Standardizer::fit(const FeatureMatrix& x) {
  Standardizer s;
  const std::size_t n = x.rows(), d = x.cols();
  s.mean.assign(d, 0.0);
  s.inv_std.assign(d, 0.0);
  if (n == 0) return s;
  for (std::size_t r = 0; r < n; ++r) {
    auto row = x.row(r);
    for (std::size_t j = 0; j < d; ++j) s.mean[j] += row[j];
  }
  for (double& m : s.mean) m /= static_cast<double>(n);
  std::vector<double> var(d, 0.0);
  for (std::size_t r = 0; r < n; ++r) {
    auto row = x.row(r);
    for (std::size_t j = 0; j < d; ++j) {
      double dv = row[j] - s.mean[j];
      var[j] += dv * dv;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    double sd = std::sqrt(var[j] / static_cast<double>(n));
    // Relative tolerance: a column is constant if its spread is rounding noise.
    double scale = std::max(1.0, std::abs(s.mean[j]));
    s.inv_std[j] = sd > 1e-12 * scale ? 1.0 / sd : 0.0;
  }
  return s;
}

FeatureMatrix Standardizer::apply(const FeatureMatrix& x) const {
  FeatureMatrix out(x.rows(), x.cols());
  for (std::size_t r = 0; r < x.rows(); ++r) apply_row(x.row(r), out.row(r));
  out.set_tag(x.tag());
  return out;
}

void Standardizer::apply_row(std::span<const double> in,
                             std::span<double> out) const {
  for (std::size_t j = 0; j < in.size(); ++j) {
    out[j] = (in[j] - mean[j]) * inv_std[j];
  }
}

}  // namespace msrf
