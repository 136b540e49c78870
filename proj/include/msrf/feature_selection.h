// msrf/feature_selection.h

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

// Select-from-model feature selection on an L1-penalized linear SVM.
//
// The SVM is fit one-vs-rest on column-standardized data by stochastic
// subgradient descent on
//
//   (1/n) sum_i max(0, 1 - y_i (w . x_i + b)) + lambda * |w|_1
//
// with step eta_t = eta0 / (1 + t / T), T = epochs * n. The L1 part uses the
// cumulative-penalty update: each weight is pulled toward zero by the penalty
// it has not yet absorbed and clipped at zero, so coefficients are exactly
// sparse. Column importance is the largest absolute
// weight over classes; a mask keeps the columns whose importance clears a
// policy-dependent threshold.

#ifndef MSRF_FEATURE_SELECTION_H_
#define MSRF_FEATURE_SELECTION_H_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "msrf/matrix.h"

namespace msrf {

struct L1SvmConfig {
  double lambda = 1e-3;
  int epochs = 30;
  double eta0 = 0.1;
};

struct L1SvmFit {
  FeatureMatrix weights;  // num_classes x input_dim, standardized space
  std::vector<double> biases;
  std::vector<std::string> label_vocab;
  double lambda = 0.0;
  int epochs = 0;
  std::uint64_t seed = 0;

  std::size_t nonzeros() const;
};

L1SvmFit fit_l1_svm(const FeatureMatrix& x, const std::vector<std::string>& y,
                    const L1SvmConfig& cfg, std::uint64_t seed);

enum class MaskPolicyKind { kMeanAbs, kQuantile, kTopK };

struct MaskPolicy {
  MaskPolicyKind kind = MaskPolicyKind::kMeanAbs;
  double quantile = 0.5;   // kQuantile
  std::size_t top_k = 1;   // kTopK

  static MaskPolicy mean_abs() { return {}; }
  static MaskPolicy quantile_of(double q) {
    return {MaskPolicyKind::kQuantile, q, 1};
  }
  static MaskPolicy top(std::size_t k) { return {MaskPolicyKind::kTopK, 0.5, k}; }

  /// "mean-abs", "quantile:<q>", "top-k:<k>".
  std::string to_string() const;
  static MaskPolicy parse(const std::string& text);
};

struct SelectionMask {
  std::vector<std::size_t> kept;  // strictly increasing
  std::size_t input_dim = 0;
  double threshold = 0.0;
  std::vector<double> importances;  // may be empty (e.g. identity masks)
  std::string policy;
  std::string provenance;

  std::size_t output_dim() const { return kept.size(); }

  /// Mask keeping every column of an `n`-wide input.
  static SelectionMask identity(std::size_t n);

  /// {input_dim, threshold, kept, policy, provenance[, importances]}.
  std::string to_json(bool with_importances = true) const;
  static SelectionMask from_json(const std::string& text);
};

/// Keeps columns with importance >= threshold and importance > 0. If that
/// leaves nothing, keeps the single highest-importance column (lowest index
/// on ties). TopK keeps ties at the k-th value.
SelectionMask mask_from_importances(std::span<const double> importances,
                                    const MaskPolicy& policy);

/// importance(j) = max over classes of |weights[c][j]|.
SelectionMask mask_from_fit(const L1SvmFit& fit, const MaskPolicy& policy);

/// Column subset in mask order. Throws MaskMismatch on width mismatch.
FeatureMatrix transform(const FeatureMatrix& x, const SelectionMask& mask);
std::vector<double> transform_row(std::span<const double> row,
                                  const SelectionMask& mask);

struct FsConfig {
  L1SvmConfig svm;
  MaskPolicy policy;
};

/// fit_l1_svm -> mask_from_fit -> transform.
std::pair<SelectionMask, FeatureMatrix> fit_select(
    const FeatureMatrix& x, const std::vector<std::string>& y,
    const FsConfig& cfg, std::uint64_t seed);

}  // namespace msrf

#endif  // MSRF_FEATURE_SELECTION_H_
