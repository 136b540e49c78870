// msrf/classifiers.h

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

// Four classifier families behind one train / predict contract.
//
//   LinearSvm     one-vs-rest hinge + L2, averaged stochastic subgradient
//                 descent; scores are raw margins.
//   LogReg        multinomial softmax + L2, full-batch gradient descent with
//                 step halving; scores are probabilities.
//   GaussianNB    per-class means and variances (+ floor), log priors;
//                 scores are posterior probabilities.
//   RandomForest  bagged CART trees (Gini, sqrt(d) features per node);
//                 scores are vote fractions.
//
// LinearSvm and LogReg standardize columns internally. Labels are mapped to
// a sorted vocabulary; predict is the argmax of predict_scores with ties
// going to the lowest vocabulary index.

#ifndef MSRF_CLASSIFIERS_H_
#define MSRF_CLASSIFIERS_H_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "msrf/matrix.h"

namespace msrf {

enum class ClassifierFamily { kLinearSvm, kLogReg, kGaussianNB, kRandomForest };

const char* family_name(ClassifierFamily f);   // "LinearSvm", ...
const char* family_short(ClassifierFamily f);  // "SVM", "LR", "NB", "RF"
/// Accepts either spelling, case-insensitive. Throws ConfigError.
ClassifierFamily parse_family(const std::string& text);

struct SvmConfig {
  double l2 = 1e-2;
  int epochs = 30;
  double eta0 = 0.1;
};

struct LogRegConfig {
  double l2 = 1e-4;
  int iterations = 100;
  double step = 1.0;
};

struct NbConfig {
  double var_floor = 1e-9;
};

struct ForestConfig {
  int trees = 100;
  int max_depth = 0;         // 0 = unlimited
  int min_leaf = 1;
  std::size_t max_features = 0;  // 0 = floor(sqrt(d))
  bool bootstrap = true;
  int workers = 1;
};

struct ClassifierConfig {
  ClassifierFamily family = ClassifierFamily::kLinearSvm;
  SvmConfig svm;
  LogRegConfig logreg;
  NbConfig nb;
  ForestConfig forest;
};

/// Flat CART tree. Node 0 is the root; a node with feature < 0 is a leaf
/// carrying `label`. Samples with x[feature] <= threshold go left.
struct DecisionTree {
  std::vector<int> feature;
  std::vector<double> threshold;
  std::vector<int> left;
  std::vector<int> right;
  std::vector<int> label;

  std::size_t size() const { return feature.size(); }
  int predict(std::span<const double> x) const;
};

struct TrainMeta {
  std::uint64_t seed = 0;
  double fit_seconds = 0.0;
  std::size_t n_samples = 0;
};

struct ClassifierModel {
  ClassifierFamily family = ClassifierFamily::kLinearSvm;
  std::vector<std::string> label_vocab;
  std::size_t input_dim = 0;
  ClassifierConfig cfg;
  TrainMeta meta;

  // LinearSvm, LogReg.
  Standardizer scaler;
  FeatureMatrix weights;  // classes x input_dim
  std::vector<double> biases;
  // GaussianNB.
  FeatureMatrix means;      // classes x input_dim
  FeatureMatrix variances;  // floored
  std::vector<double> log_priors;
  // RandomForest.
  std::vector<DecisionTree> trees;

  std::size_t num_classes() const { return label_vocab.size(); }
};

/// Throws DimensionMismatch, NonFiniteInput, DegenerateLabels.
ClassifierModel train(const FeatureMatrix& x, const std::vector<std::string>& y,
                      const ClassifierConfig& cfg, std::uint64_t seed);

/// rows x num_classes. Throws DimensionMismatch on width mismatch.
FeatureMatrix predict_scores(const ClassifierModel& model, const FeatureMatrix& x);
std::vector<double> predict_scores_row(const ClassifierModel& model,
                                       std::span<const double> x);

std::vector<std::string> predict(const ClassifierModel& model,
                                 const FeatureMatrix& x);
/// First index of the maximum.
std::size_t argmax(std::span<const double> v);

/// Writes <dir>/model.json (family, label_vocab, cfg, meta, parameter
/// layout) and <dir>/params.msrf (float64 MSRF blob).
void save_model(const ClassifierModel& model, const std::filesystem::path& dir);
ClassifierModel load_model(const std::filesystem::path& dir);

// ---------------------------------------------------------------------------
// Building blocks exposed for testing.

/// Mean softmax cross-entropy plus (l2 / 2) * |W|^2 on standardized rows.
/// `params` holds W (k x d, row-major) followed by b (k). If `grad` is
/// non-null it receives the analytic gradient in the same layout.
double logreg_objective(const FeatureMatrix& x, std::span<const std::size_t> y,
                        std::size_t k, double l2, std::span<const double> params,
                        std::vector<double>* grad);

/// Runs the LogReg optimizer on (x, y) and returns the objective after
/// every iteration, starting with the initial point.
std::vector<double> logreg_loss_trace(const FeatureMatrix& x,
                                      const std::vector<std::string>& y,
                                      const LogRegConfig& cfg);

/// One CART tree on `rows` of x (all rows if empty), considering
/// `max_features` randomly chosen columns per node (all if 0 or >= d).
DecisionTree fit_cart(const FeatureMatrix& x, std::span<const std::size_t> labels,
                      std::size_t num_classes, std::span<const std::size_t> rows,
                      const ForestConfig& cfg, std::size_t max_features,
                      std::uint64_t seed);

}  // namespace msrf

#endif  // MSRF_CLASSIFIERS_H_
