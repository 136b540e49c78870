// msrf/classifiers.cc

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

#include "msrf/classifiers.h"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <numbers>
#include <numeric>
#include <sstream>

#include "msrf/common.h"
#include "msrf/config_json.h"
#include "msrf/embedding_store.h"

namespace msrf {

namespace {

constexpr int kModelFormatVersion = 1;

void check_training_input(const FeatureMatrix& x,
                          const std::vector<std::string>& y) {
  if (x.rows() != y.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(x.rows()) + " rows but " +
                    std::to_string(y.size()) + " labels");
  }
  if (!x.all_finite()) {
    throw Error(ErrorCode::kNonFiniteInput, "feature matrix has NaN/Inf");
  }
}

void check_width(const ClassifierModel& m, std::size_t cols) {
  if (cols != m.input_dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "model expects " + std::to_string(m.input_dim) +
                    " columns, got " + std::to_string(cols));
  }
}

void softmax_inplace(std::span<double> v) {
  double mx = *std::max_element(v.begin(), v.end());
  double sum = 0.0;
  for (double& s : v) {
    s = std::exp(s - mx);
    sum += s;
  }
  for (double& s : v) s /= sum;
}

// ---------------------------------------------------------------------------
// LinearSvm

void fit_svm(ClassifierModel& m, const FeatureMatrix& x,
             const std::vector<std::size_t>& labels, std::uint64_t seed) {
  const auto& cfg = m.cfg.svm;
  const std::size_t n = x.rows(), d = x.cols(), k = m.num_classes();
  m.scaler = Standardizer::fit(x);
  const FeatureMatrix xs = m.scaler.apply(x);
  // w_c = scale[c] * v_c keeps the L2 shrink O(1) per step. The returned
  // weights are the average of the iterates after the first epoch.
  FeatureMatrix v(k, d), avg(k, d);
  std::vector<double> scale(k, 1.0), bias(k, 0.0), avg_bias(k, 0.0);
  double averaged = 0.0;

  Rng rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  const double decay =
      static_cast<double>(std::max<std::size_t>(n, 1)) * std::max(cfg.epochs, 1);
  std::size_t step = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(order);
    const bool averaging = epoch > 0 || cfg.epochs == 1;
    for (std::size_t i : order) {
      const double eta = cfg.eta0 / (1.0 + static_cast<double>(step) / decay);
      auto xi = xs.row(i);
      for (std::size_t c = 0; c < k; ++c) {
        auto vc = v.row(c);
        const double target = labels[i] == c ? 1.0 : -1.0;
        double dot = 0.0;
        for (std::size_t j = 0; j < d; ++j) dot += vc[j] * xi[j];
        const double score = scale[c] * dot + bias[c];
        scale[c] *= 1.0 - eta * cfg.l2;
        if (target * score < 1.0) {
          const double g = eta * target / scale[c];
          for (std::size_t j = 0; j < d; ++j) vc[j] += g * xi[j];
          bias[c] += eta * target;
        }
        if (scale[c] < 1e-6) {
          for (double& w : vc) w *= scale[c];
          scale[c] = 1.0;
        }
        if (averaging) {
          auto ac = avg.row(c);
          for (std::size_t j = 0; j < d; ++j) ac[j] += scale[c] * vc[j];
          avg_bias[c] += bias[c];
        }
      }
      if (averaging) averaged += 1.0;
      ++step;
    }
  }
  m.weights = std::move(avg);
  for (double& w : m.weights.data()) w /= averaged;
  m.biases = std::move(avg_bias);
  for (double& b : m.biases) b /= averaged;
}

// ---------------------------------------------------------------------------
// LogReg

// Gradient descent with step halving; calls `on_iter(loss)` after the
// initial evaluation and after every accepted step.
template <typename F>
std::vector<double> optimize_logreg(const FeatureMatrix& xs,
                                    std::span<const std::size_t> labels,
                                    std::size_t k, const LogRegConfig& cfg,
                                    F on_iter) {
  const std::size_t d = xs.cols();
  std::vector<double> params(k * d + k, 0.0), grad, cand, cand_grad;
  double loss = logreg_objective(xs, labels, k, cfg.l2, params, &grad);
  on_iter(loss);
  double step = cfg.step;
  for (int it = 0; it < cfg.iterations; ++it) {
    bool accepted = false;
    while (step > 1e-12) {
      cand.resize(params.size());
      for (std::size_t p = 0; p < params.size(); ++p) {
        cand[p] = params[p] - step * grad[p];
      }
      double cand_loss =
          logreg_objective(xs, labels, k, cfg.l2, cand, &cand_grad);
      if (cand_loss <= loss) {
        params.swap(cand);
        grad.swap(cand_grad);
        loss = cand_loss;
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    on_iter(loss);
  }
  return params;
}

void fit_logreg(ClassifierModel& m, const FeatureMatrix& x,
                const std::vector<std::size_t>& labels) {
  const std::size_t d = x.cols(), k = m.num_classes();
  m.scaler = Standardizer::fit(x);
  const FeatureMatrix xs = m.scaler.apply(x);
  auto params = optimize_logreg(xs, labels, k, m.cfg.logreg, [](double) {});
  m.weights = FeatureMatrix(
      k, d, std::vector<double>(params.begin(), params.begin() + k * d));
  m.biases.assign(params.begin() + k * d, params.end());
}

// ---------------------------------------------------------------------------
// GaussianNB

void fit_gnb(ClassifierModel& m, const FeatureMatrix& x,
             const std::vector<std::size_t>& labels) {
  const std::size_t n = x.rows(), d = x.cols(), k = m.num_classes();
  std::vector<double> count(k, 0.0);
  m.means = FeatureMatrix(k, d);
  m.variances = FeatureMatrix(k, d);
  for (std::size_t i = 0; i < n; ++i) {
    count[labels[i]] += 1.0;
    auto mu = m.means.row(labels[i]);
    auto xi = x.row(i);
    for (std::size_t j = 0; j < d; ++j) mu[j] += xi[j];
  }
  for (std::size_t c = 0; c < k; ++c) {
    for (double& v : m.means.row(c)) v /= count[c];
  }
  for (std::size_t i = 0; i < n; ++i) {
    auto mu = m.means.row(labels[i]);
    auto var = m.variances.row(labels[i]);
    auto xi = x.row(i);
    for (std::size_t j = 0; j < d; ++j) {
      const double dv = xi[j] - mu[j];
      var[j] += dv * dv;
    }
  }
  m.log_priors.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    for (double& v : m.variances.row(c)) v = v / count[c] + m.cfg.nb.var_floor;
    m.log_priors[c] = std::log(count[c] / static_cast<double>(n));
  }
}

// ---------------------------------------------------------------------------
// CART / RandomForest

struct SplitCandidate {
  double impurity = 0.0;  // weighted child Gini times node size
  int feature = -1;
  double threshold = 0.0;
};

bool better(const SplitCandidate& a, const SplitCandidate& b) {
  if (b.feature < 0) return true;
  if (a.impurity != b.impurity) return a.impurity < b.impurity;
  if (a.feature != b.feature) return a.feature < b.feature;
  return a.threshold < b.threshold;
}

class CartBuilder {
 public:
  CartBuilder(const FeatureMatrix& x, std::span<const std::size_t> labels,
              std::size_t k, const ForestConfig& cfg, std::size_t max_features,
              std::uint64_t seed)
      : x_(x), labels_(labels), k_(k), cfg_(cfg), rng_(seed),
        features_(x.cols()) {
    std::iota(features_.begin(), features_.end(), 0);
    mf_ = (max_features == 0 || max_features >= x.cols()) ? x.cols()
                                                           : max_features;
  }

  DecisionTree build(std::vector<std::size_t> idx) {
    idx_ = std::move(idx);
    grow(0, idx_.size(), 0);
    return std::move(tree_);
  }

 private:
  int add_node() {
    tree_.feature.push_back(-1);
    tree_.threshold.push_back(0.0);
    tree_.left.push_back(-1);
    tree_.right.push_back(-1);
    tree_.label.push_back(0);
    return static_cast<int>(tree_.size() - 1);
  }

  int grow(std::size_t begin, std::size_t end, int depth) {
    const int node = add_node();
    const std::size_t n = end - begin;
    std::vector<double> counts(k_, 0.0);
    for (std::size_t p = begin; p < end; ++p) counts[labels_[idx_[p]]] += 1.0;
    tree_.label[node] = static_cast<int>(argmax(counts));
    const bool pure =
        std::count_if(counts.begin(), counts.end(), [](double c) { return c > 0; }) <= 1;
    const std::size_t min_leaf = static_cast<std::size_t>(cfg_.min_leaf);
    if (pure || n < 2 * min_leaf ||
        (cfg_.max_depth > 0 && depth >= cfg_.max_depth)) {
      return node;
    }

    if (mf_ < features_.size()) {
      for (std::size_t i = 0; i < mf_; ++i) {
        std::swap(features_[i], features_[i + rng_.below(features_.size() - i)]);
      }
    }
    SplitCandidate best;
    std::vector<std::pair<double, std::size_t>> col(n);
    std::vector<double> left(k_);
    for (std::size_t fi = 0; fi < mf_; ++fi) {
      const std::size_t f = features_[fi];
      for (std::size_t p = 0; p < n; ++p) {
        const std::size_t r = idx_[begin + p];
        col[p] = {x_(r, f), labels_[r]};
      }
      std::sort(col.begin(), col.end());
      if (col.front().first == col.back().first) continue;
      std::fill(left.begin(), left.end(), 0.0);
      double sq_left = 0.0, sq_right = 0.0;
      for (double c : counts) sq_right += c * c;
      for (std::size_t p = 0; p + 1 < n; ++p) {
        const std::size_t c = col[p].second;
        const double right_c = counts[c] - left[c];
        sq_left += 2.0 * left[c] + 1.0;
        sq_right -= 2.0 * right_c - 1.0;
        left[c] += 1.0;
        if (col[p].first == col[p + 1].first) continue;
        const double nl = static_cast<double>(p + 1);
        const double nr = static_cast<double>(n - p - 1);
        if (p + 1 < min_leaf || n - p - 1 < min_leaf) continue;
        SplitCandidate cand;
        cand.impurity = (nl - sq_left / nl) + (nr - sq_right / nr);
        cand.feature = static_cast<int>(f);
        double mid = 0.5 * (col[p].first + col[p + 1].first);
        cand.threshold = mid < col[p + 1].first ? mid : col[p].first;
        if (better(cand, best)) best = cand;
      }
    }
    if (best.feature < 0) return node;

    auto first = idx_.begin() + static_cast<std::ptrdiff_t>(begin);
    auto last = idx_.begin() + static_cast<std::ptrdiff_t>(end);
    const auto f = static_cast<std::size_t>(best.feature);
    auto mid = std::stable_partition(first, last, [&](std::size_t r) {
      return x_(r, f) <= best.threshold;
    });
    const auto split = static_cast<std::size_t>(mid - idx_.begin());
    tree_.feature[node] = best.feature;
    tree_.threshold[node] = best.threshold;
    const int l = grow(begin, split, depth + 1);
    tree_.left[node] = l;
    const int r = grow(split, end, depth + 1);
    tree_.right[node] = r;
    return node;
  }

  const FeatureMatrix& x_;
  std::span<const std::size_t> labels_;
  std::size_t k_;
  const ForestConfig& cfg_;
  Rng rng_;
  std::vector<std::size_t> features_;
  std::size_t mf_;
  std::vector<std::size_t> idx_;
  DecisionTree tree_;
};

void fit_forest(ClassifierModel& m, const FeatureMatrix& x,
                const std::vector<std::size_t>& labels, std::uint64_t seed) {
  const auto& cfg = m.cfg.forest;
  const std::size_t n = x.rows(), d = x.cols();
  std::size_t mf = cfg.max_features;
  if (mf == 0) {
    mf = std::max<std::size_t>(
        1, static_cast<std::size_t>(std::floor(std::sqrt(static_cast<double>(d)))));
  }
  m.trees.assign(static_cast<std::size_t>(cfg.trees), DecisionTree{});
  parallel_for(m.trees.size(), cfg.workers, [&](std::size_t t) {
    std::vector<std::size_t> rows(n);
    if (cfg.bootstrap) {
      Rng boot(derive_seed(seed, {t, 0}));
      for (auto& r : rows) r = boot.below(n);
    } else {
      std::iota(rows.begin(), rows.end(), 0);
    }
    m.trees[t] = fit_cart(x, labels, m.num_classes(), rows, cfg, mf,
                          derive_seed(seed, {t, 1}));
  });
}

// ---------------------------------------------------------------------------
// Parameter blob layout

struct Blob {
  Json layout = Json::array();
  std::vector<double> values;

  void put(const std::string& name, std::span<const double> v) {
    layout.push_back({{"name", name}, {"size", v.size()}});
    values.insert(values.end(), v.begin(), v.end());
  }
  void put_ints(const std::string& name, const std::vector<int>& v) {
    std::vector<double> d(v.begin(), v.end());
    put(name, d);
  }
};

class BlobReader {
 public:
  BlobReader(const nlohmann::json& layout, std::span<const double> values)
      : values_(values) {
    std::size_t off = 0;
    for (const auto& e : layout) {
      const auto name = e.at("name").get<std::string>();
      const auto size = e.at("size").get<std::size_t>();
      offsets_.push_back({name, off, size});
      off += size;
    }
    if (off != values.size()) {
      throw Error(ErrorCode::kCorruptFile, "parameter blob size does not match layout");
    }
  }

  std::span<const double> take(const std::string& name) {
    if (pos_ >= offsets_.size() || offsets_[pos_].name != name) {
      throw Error(ErrorCode::kCorruptFile, "parameter layout: expected '" + name + "'");
    }
    const auto& e = offsets_[pos_++];
    return values_.subspan(e.offset, e.size);
  }
  std::vector<double> vec(const std::string& name) {
    auto s = take(name);
    return {s.begin(), s.end()};
  }
  std::vector<int> ints(const std::string& name) {
    auto s = take(name);
    return std::vector<int>(s.begin(), s.end());
  }
  FeatureMatrix matrix(const std::string& name, std::size_t rows,
                       std::size_t cols) {
    auto s = take(name);
    if (s.size() != rows * cols) {
      throw Error(ErrorCode::kCorruptFile, "parameter '" + name + "' has wrong size");
    }
    return FeatureMatrix(rows, cols, std::vector<double>(s.begin(), s.end()));
  }

 private:
  struct Entry {
    std::string name;
    std::size_t offset;
    std::size_t size;
  };
  std::span<const double> values_;
  std::vector<Entry> offsets_;
  std::size_t pos_ = 0;
};

}  // namespace

const char* family_name(ClassifierFamily f) {
  switch (f) {
    case ClassifierFamily::kLinearSvm: return "LinearSvm";
    case ClassifierFamily::kLogReg: return "LogReg";
    case ClassifierFamily::kGaussianNB: return "GaussianNB";
    case ClassifierFamily::kRandomForest: return "RandomForest";
  }
  return "LinearSvm";
}

const char* family_short(ClassifierFamily f) {
  switch (f) {
    case ClassifierFamily::kLinearSvm: return "SVM";
    case ClassifierFamily::kLogReg: return "LR";
    case ClassifierFamily::kGaussianNB: return "NB";
    case ClassifierFamily::kRandomForest: return "RF";
  }
  return "SVM";
}

ClassifierFamily parse_family(const std::string& text) {
  std::string t;
  for (char c : text) t.push_back(static_cast<char>(std::tolower(c)));
  for (auto f : {ClassifierFamily::kLinearSvm, ClassifierFamily::kLogReg,
                 ClassifierFamily::kGaussianNB, ClassifierFamily::kRandomForest}) {
    std::string a = family_name(f), b = family_short(f);
    std::transform(a.begin(), a.end(), a.begin(), ::tolower);
    std::transform(b.begin(), b.end(), b.begin(), ::tolower);
    if (t == a || t == b) return f;
  }
  throw Error(ErrorCode::kConfigError,
              "unknown classifier family '" + text +
                  "' (want LinearSvm|LogReg|GaussianNB|RandomForest or SVM|LR|NB|RF)");
}

int DecisionTree::predict(std::span<const double> x) const {
  std::size_t node = 0;
  while (feature[node] >= 0) {
    node = static_cast<std::size_t>(
        x[static_cast<std::size_t>(feature[node])] <= threshold[node]
            ? left[node]
            : right[node]);
  }
  return label[node];
}

std::size_t argmax(std::span<const double> v) {
  return static_cast<std::size_t>(std::max_element(v.begin(), v.end()) - v.begin());
}

double logreg_objective(const FeatureMatrix& x, std::span<const std::size_t> y,
                        std::size_t k, double l2, std::span<const double> params,
                        std::vector<double>* grad) {
  const std::size_t n = x.rows(), d = x.cols();
  const double* w = params.data();
  const double* b = params.data() + k * d;
  if (grad) grad->assign(params.size(), 0.0);
  double loss = 0.0;
  std::vector<double> z(k);
  for (std::size_t i = 0; i < n; ++i) {
    auto xi = x.row(i);
    for (std::size_t c = 0; c < k; ++c) {
      double s = b[c];
      const double* wc = w + c * d;
      for (std::size_t j = 0; j < d; ++j) s += wc[j] * xi[j];
      z[c] = s;
    }
    const double mx = *std::max_element(z.begin(), z.end());
    double sum = 0.0;
    for (double s : z) sum += std::exp(s - mx);
    const double lse = mx + std::log(sum);
    loss += lse - z[y[i]];
    if (grad) {
      for (std::size_t c = 0; c < k; ++c) {
        const double r = std::exp(z[c] - lse) - (c == y[i] ? 1.0 : 0.0);
        double* gc = grad->data() + c * d;
        for (std::size_t j = 0; j < d; ++j) gc[j] += r * xi[j];
        (*grad)[k * d + c] += r;
      }
    }
  }
  const double inv_n = 1.0 / static_cast<double>(n);
  loss *= inv_n;
  double sq = 0.0;
  for (std::size_t p = 0; p < k * d; ++p) sq += w[p] * w[p];
  loss += 0.5 * l2 * sq;
  if (grad) {
    for (std::size_t p = 0; p < k * d; ++p) (*grad)[p] = (*grad)[p] * inv_n + l2 * w[p];
    for (std::size_t c = 0; c < k; ++c) (*grad)[k * d + c] *= inv_n;
  }
  return loss;
}

std::vector<double> logreg_loss_trace(const FeatureMatrix& x,
                                      const std::vector<std::string>& y,
                                      const LogRegConfig& cfg) {
  check_training_input(x, y);
  const auto vocab = make_vocab(y);
  const auto labels = encode_labels(y, vocab);
  const FeatureMatrix xs = Standardizer::fit(x).apply(x);
  std::vector<double> trace;
  optimize_logreg(xs, labels, vocab.size(), cfg,
                  [&](double l) { trace.push_back(l); });
  return trace;
}

DecisionTree fit_cart(const FeatureMatrix& x, std::span<const std::size_t> labels,
                      std::size_t num_classes, std::span<const std::size_t> rows,
                      const ForestConfig& cfg, std::size_t max_features,
                      std::uint64_t seed) {
  std::vector<std::size_t> idx(rows.begin(), rows.end());
  if (idx.empty()) {
    idx.resize(x.rows());
    std::iota(idx.begin(), idx.end(), 0);
  }
  CartBuilder builder(x, labels, num_classes, cfg, max_features, seed);
  return builder.build(std::move(idx));
}

ClassifierModel train(const FeatureMatrix& x, const std::vector<std::string>& y,
                      const ClassifierConfig& cfg, std::uint64_t seed) {
  check_training_input(x, y);
  ClassifierModel m;
  m.family = cfg.family;
  m.cfg = cfg;
  m.label_vocab = make_vocab(y);
  if (m.label_vocab.size() < 2) {
    throw Error(ErrorCode::kDegenerateLabels,
                std::string(family_name(cfg.family)) + " needs at least 2 classes");
  }
  m.input_dim = x.cols();
  m.meta.seed = seed;
  m.meta.n_samples = x.rows();
  const auto labels = encode_labels(y, m.label_vocab);
  Stopwatch sw;
  switch (cfg.family) {
    case ClassifierFamily::kLinearSvm: fit_svm(m, x, labels, seed); break;
    case ClassifierFamily::kLogReg: fit_logreg(m, x, labels); break;
    case ClassifierFamily::kGaussianNB: fit_gnb(m, x, labels); break;
    case ClassifierFamily::kRandomForest: fit_forest(m, x, labels, seed); break;
  }
  m.meta.fit_seconds = sw.seconds();
  return m;
}

std::vector<double> predict_scores_row(const ClassifierModel& m,
                                       std::span<const double> x) {
  check_width(m, x.size());
  const std::size_t k = m.num_classes(), d = m.input_dim;
  std::vector<double> out(k, 0.0);
  switch (m.family) {
    case ClassifierFamily::kLinearSvm:
    case ClassifierFamily::kLogReg: {
      std::vector<double> xs(d);
      m.scaler.apply_row(x, xs);
      for (std::size_t c = 0; c < k; ++c) {
        double s = m.biases[c];
        auto w = m.weights.row(c);
        for (std::size_t j = 0; j < d; ++j) s += w[j] * xs[j];
        out[c] = s;
      }
      if (m.family == ClassifierFamily::kLogReg) softmax_inplace(out);
      break;
    }
    case ClassifierFamily::kGaussianNB: {
      for (std::size_t c = 0; c < k; ++c) {
        double s = m.log_priors[c];
        auto mu = m.means.row(c);
        auto var = m.variances.row(c);
        for (std::size_t j = 0; j < d; ++j) {
          const double dv = x[j] - mu[j];
          s -= 0.5 * (std::log(2.0 * std::numbers::pi * var[j]) + dv * dv / var[j]);
        }
        out[c] = s;
      }
      softmax_inplace(out);
      break;
    }
    case ClassifierFamily::kRandomForest: {
      for (const auto& t : m.trees) out[static_cast<std::size_t>(t.predict(x))] += 1.0;
      for (double& v : out) v /= static_cast<double>(m.trees.size());
      break;
    }
  }
  return out;
}

FeatureMatrix predict_scores(const ClassifierModel& m, const FeatureMatrix& x) {
  check_width(m, x.cols());
  FeatureMatrix out(x.rows(), m.num_classes());
  for (std::size_t i = 0; i < x.rows(); ++i) {
    auto s = predict_scores_row(m, x.row(i));
    std::copy(s.begin(), s.end(), out.row(i).begin());
  }
  return out;
}

std::vector<std::string> predict(const ClassifierModel& m, const FeatureMatrix& x) {
  FeatureMatrix s = predict_scores(m, x);
  std::vector<std::string> out;
  out.reserve(x.rows());
  for (std::size_t i = 0; i < x.rows(); ++i) out.push_back(m.label_vocab[argmax(s.row(i))]);
  return out;
}

void save_model(const ClassifierModel& m, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  Blob blob;
  switch (m.family) {
    case ClassifierFamily::kLinearSvm:
    case ClassifierFamily::kLogReg:
      blob.put("scaler.mean", m.scaler.mean);
      blob.put("scaler.inv_std", m.scaler.inv_std);
      blob.put("weights", m.weights.data());
      blob.put("biases", m.biases);
      break;
    case ClassifierFamily::kGaussianNB:
      blob.put("means", m.means.data());
      blob.put("variances", m.variances.data());
      blob.put("log_priors", m.log_priors);
      break;
    case ClassifierFamily::kRandomForest:
      for (std::size_t t = 0; t < m.trees.size(); ++t) {
        const auto& tr = m.trees[t];
        const std::string p = "tree" + std::to_string(t) + ".";
        blob.put_ints(p + "feature", tr.feature);
        blob.put(p + "threshold", tr.threshold);
        blob.put_ints(p + "left", tr.left);
        blob.put_ints(p + "right", tr.right);
        blob.put_ints(p + "label", tr.label);
      }
      break;
  }
  Json j;
  j["format"] = "msrf-classifier";
  j["version"] = kModelFormatVersion;
  j["family"] = family_name(m.family);
  j["label_vocab"] = m.label_vocab;
  j["input_dim"] = m.input_dim;
  j["cfg"] = to_json(m.cfg);
  j["seed"] = m.meta.seed;
  j["train_meta"] = {{"seed", m.meta.seed},
                     {"n_samples", m.meta.n_samples},
                     {"fit_seconds", m.meta.fit_seconds}};
  j["num_trees"] = m.trees.size();
  j["layout"] = blob.layout;
  {
    std::ofstream out(dir / "model.json", std::ios::binary);
    if (!out) throw Error(ErrorCode::kIoError, "cannot write " + (dir / "model.json").string());
    out << j.dump(1) << '\n';
  }
  EmbeddingTable table(blob.values.size(), "params");
  if (!blob.values.empty()) table.add("params", blob.values);
  write_embeddings(dir / "params.msrf", table, Precision::kF64);
}

ClassifierModel load_model(const std::filesystem::path& dir) {
  std::ifstream in(dir / "model.json", std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + (dir / "model.json").string());
  std::stringstream ss;
  ss << in.rdbuf();
  ClassifierModel m;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(ss.str());
    if (j.at("format").get<std::string>() != "msrf-classifier" ||
        j.at("version").get<int>() != kModelFormatVersion) {
      throw Error(ErrorCode::kCorruptFile, "unsupported model format in " + dir.string());
    }
    m.family = parse_family(j.at("family").get<std::string>());
    m.label_vocab = j.at("label_vocab").get<std::vector<std::string>>();
    m.input_dim = j.at("input_dim").get<std::size_t>();
    read_json(j.at("cfg"), "cfg", m.cfg);
    const auto& meta = j.at("train_meta");
    m.meta.seed = meta.at("seed").get<std::uint64_t>();
    m.meta.n_samples = meta.at("n_samples").get<std::size_t>();
    m.meta.fit_seconds = meta.at("fit_seconds").get<double>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kCorruptFile, dir.string() + "/model.json: " + e.what());
  }
  const std::size_t k = m.num_classes(), d = m.input_dim;
  EmbeddingTable table = load_embeddings(dir / "params.msrf");
  std::vector<double> values;
  if (table.size() == 1) {
    auto r = table.row(0);
    values.assign(r.begin(), r.end());
  }
  BlobReader rd(j.at("layout"), values);
  switch (m.family) {
    case ClassifierFamily::kLinearSvm:
    case ClassifierFamily::kLogReg:
      m.scaler.mean = rd.vec("scaler.mean");
      m.scaler.inv_std = rd.vec("scaler.inv_std");
      m.weights = rd.matrix("weights", k, d);
      m.biases = rd.vec("biases");
      break;
    case ClassifierFamily::kGaussianNB:
      m.means = rd.matrix("means", k, d);
      m.variances = rd.matrix("variances", k, d);
      m.log_priors = rd.vec("log_priors");
      break;
    case ClassifierFamily::kRandomForest: {
      const auto nt = j.at("num_trees").get<std::size_t>();
      m.trees.resize(nt);
      for (std::size_t t = 0; t < nt; ++t) {
        auto& tr = m.trees[t];
        const std::string p = "tree" + std::to_string(t) + ".";
        tr.feature = rd.ints(p + "feature");
        tr.threshold = rd.vec(p + "threshold");
        tr.left = rd.ints(p + "left");
        tr.right = rd.ints(p + "right");
        tr.label = rd.ints(p + "label");
      }
      break;
    }
  }
  return m;
}

}  // namespace msrf
