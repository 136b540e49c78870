// msrf/feature_selection.cc

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

#include "msrf/feature_selection.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "json.hpp"
#include "msrf/common.h"

namespace msrf {

namespace {

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

}  // namespace

std::size_t L1SvmFit::nonzeros() const {
  return static_cast<std::size_t>(
      std::count_if(weights.data().begin(), weights.data().end(),
                    [](double w) { return w != 0.0; }));
}

L1SvmFit fit_l1_svm(const FeatureMatrix& x, const std::vector<std::string>& y,
                    const L1SvmConfig& cfg, std::uint64_t seed) {
  check_training_input(x, y);
  L1SvmFit fit;
  fit.label_vocab = make_vocab(y);
  if (fit.label_vocab.size() < 2) {
    throw Error(ErrorCode::kDegenerateLabels,
                "feature selection needs at least 2 classes");
  }
  fit.lambda = cfg.lambda;
  fit.epochs = cfg.epochs;
  fit.seed = seed;

  const std::size_t n = x.rows(), d = x.cols(), k = fit.label_vocab.size();
  const auto labels = encode_labels(y, fit.label_vocab);
  const FeatureMatrix xs = Standardizer::fit(x).apply(x);
  fit.weights = FeatureMatrix(k, d);
  fit.biases.assign(k, 0.0);

  Rng rng(seed);
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Cumulative L1 penalty: `total` is the penalty every weight should have
  // received so far, applied[c][j] what weight (c, j) actually absorbed.
  FeatureMatrix applied(k, d);
  double total = 0.0;
  const double decay =
      static_cast<double>(std::max<std::size_t>(n, 1)) * std::max(cfg.epochs, 1);
  std::size_t step = 0;
  for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
    rng.shuffle(order);
    for (std::size_t i : order) {
      const double eta = cfg.eta0 / (1.0 + static_cast<double>(step) / decay);
      total += eta * cfg.lambda;
      auto xi = xs.row(i);
      for (std::size_t c = 0; c < k; ++c) {
        auto w = fit.weights.row(c);
        auto q = applied.row(c);
        const double target = labels[i] == c ? 1.0 : -1.0;
        double score = fit.biases[c];
        for (std::size_t j = 0; j < d; ++j) score += w[j] * xi[j];
        if (target * score < 1.0) {
          const double g = eta * target;
          for (std::size_t j = 0; j < d; ++j) w[j] += g * xi[j];
          fit.biases[c] += g;
        }
        for (std::size_t j = 0; j < d; ++j) {
          const double before = w[j];
          if (before > 0.0) {
            w[j] = std::max(0.0, before - (total + q[j]));
          } else if (before < 0.0) {
            w[j] = std::min(0.0, before + (total - q[j]));
          }
          q[j] += w[j] - before;
        }
      }
      ++step;
    }
  }
  return fit;
}

std::string MaskPolicy::to_string() const {
  std::ostringstream s;
  switch (kind) {
    case MaskPolicyKind::kMeanAbs: return "mean-abs";
    case MaskPolicyKind::kQuantile: s << "quantile:" << quantile; return s.str();
    case MaskPolicyKind::kTopK: s << "top-k:" << top_k; return s.str();
  }
  return "mean-abs";
}

MaskPolicy MaskPolicy::parse(const std::string& text) {
  if (text == "mean-abs") return mean_abs();
  auto colon = text.find(':');
  if (colon != std::string::npos) {
    std::string head = text.substr(0, colon), arg = text.substr(colon + 1);
    try {
      std::size_t used = 0;
      if (head == "quantile") {
        double q = std::stod(arg, &used);
        if (used == arg.size() && q >= 0.0 && q <= 1.0) return quantile_of(q);
      } else if (head == "top-k") {
        long k = std::stol(arg, &used);
        if (used == arg.size() && k >= 1) return top(static_cast<std::size_t>(k));
      }
    } catch (const std::exception&) {
    }
  }
  throw Error(ErrorCode::kConfigError,
              "bad mask policy '" + text +
                  "' (want mean-abs, quantile:<q in [0,1]>, top-k:<k>=1>)");
}

SelectionMask SelectionMask::identity(std::size_t n) {
  SelectionMask m;
  m.kept.resize(n);
  std::iota(m.kept.begin(), m.kept.end(), 0);
  m.input_dim = n;
  m.policy = "identity";
  return m;
}

std::string SelectionMask::to_json(bool with_importances) const {
  nlohmann::ordered_json j;
  j["input_dim"] = input_dim;
  j["threshold"] = threshold;
  j["kept"] = kept;
  j["policy"] = policy;
  j["provenance"] = provenance;
  if (with_importances && !importances.empty()) j["importances"] = importances;
  return j.dump(1);
}

SelectionMask SelectionMask::from_json(const std::string& text) {
  SelectionMask m;
  try {
    auto j = nlohmann::json::parse(text);
    m.input_dim = j.at("input_dim").get<std::size_t>();
    m.threshold = j.at("threshold").get<double>();
    m.kept = j.at("kept").get<std::vector<std::size_t>>();
    m.policy = j.value("policy", std::string());
    m.provenance = j.value("provenance", std::string());
    if (j.contains("importances")) {
      m.importances = j.at("importances").get<std::vector<double>>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kParseError, std::string("selection mask: ") + e.what());
  }
  if (m.kept.empty()) throw Error(ErrorCode::kParseError, "mask keeps nothing");
  for (std::size_t i = 0; i < m.kept.size(); ++i) {
    if (m.kept[i] >= m.input_dim || (i > 0 && m.kept[i] <= m.kept[i - 1])) {
      throw Error(ErrorCode::kParseError,
                  "mask indices must be strictly increasing and < input_dim");
    }
  }
  return m;
}

SelectionMask mask_from_importances(std::span<const double> importances,
                                    const MaskPolicy& policy) {
  const std::size_t d = importances.size();
  if (d == 0) throw Error(ErrorCode::kPrecondition, "no columns to select from");
  SelectionMask mask;
  mask.input_dim = d;
  mask.importances.assign(importances.begin(), importances.end());
  mask.policy = policy.to_string();

  std::vector<double> sorted(importances.begin(), importances.end());
  std::sort(sorted.begin(), sorted.end());
  switch (policy.kind) {
    case MaskPolicyKind::kMeanAbs:
      mask.threshold =
          std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(d);
      break;
    case MaskPolicyKind::kQuantile: {
      // Linear interpolation between order statistics.
      double pos = policy.quantile * static_cast<double>(d - 1);
      auto lo = static_cast<std::size_t>(std::floor(pos));
      std::size_t hi = std::min(lo + 1, d - 1);
      double frac = pos - static_cast<double>(lo);
      mask.threshold = sorted[lo] + frac * (sorted[hi] - sorted[lo]);
      break;
    }
    case MaskPolicyKind::kTopK: {
      std::size_t k = std::clamp<std::size_t>(policy.top_k, 1, d);
      mask.threshold = sorted[d - k];
      break;
    }
  }
  for (std::size_t j = 0; j < d; ++j) {
    if (importances[j] >= mask.threshold && importances[j] > 0.0) {
      mask.kept.push_back(j);
    }
  }
  if (mask.kept.empty()) {
    auto best = static_cast<std::size_t>(
        std::max_element(importances.begin(), importances.end()) -
        importances.begin());
    mask.kept.push_back(best);
    mask.threshold = importances[best];
  }
  return mask;
}

SelectionMask mask_from_fit(const L1SvmFit& fit, const MaskPolicy& policy) {
  const std::size_t d = fit.weights.cols();
  std::vector<double> importance(d, 0.0);
  for (std::size_t c = 0; c < fit.weights.rows(); ++c) {
    auto w = fit.weights.row(c);
    for (std::size_t j = 0; j < d; ++j) {
      importance[j] = std::max(importance[j], std::abs(w[j]));
    }
  }
  SelectionMask mask = mask_from_importances(importance, policy);
  std::ostringstream prov;
  prov << "l1-linear-svm lambda=" << fit.lambda << " epochs=" << fit.epochs
       << " seed=" << fit.seed << " classes=" << fit.label_vocab.size();
  mask.provenance = prov.str();
  return mask;
}

FeatureMatrix transform(const FeatureMatrix& x, const SelectionMask& mask) {
  if (x.cols() != mask.input_dim) {
    throw Error(ErrorCode::kMaskMismatch,
                "matrix has " + std::to_string(x.cols()) + " columns, mask expects " +
                    std::to_string(mask.input_dim));
  }
  return x.select_cols(mask.kept);
}

std::vector<double> transform_row(std::span<const double> row,
                                  const SelectionMask& mask) {
  if (row.size() != mask.input_dim) {
    throw Error(ErrorCode::kMaskMismatch,
                "row has " + std::to_string(row.size()) + " values, mask expects " +
                    std::to_string(mask.input_dim));
  }
  std::vector<double> out;
  out.reserve(mask.kept.size());
  for (std::size_t j : mask.kept) out.push_back(row[j]);
  return out;
}

std::pair<SelectionMask, FeatureMatrix> fit_select(
    const FeatureMatrix& x, const std::vector<std::string>& y,
    const FsConfig& cfg, std::uint64_t seed) {
  L1SvmFit fit = fit_l1_svm(x, y, cfg.svm, seed);
  SelectionMask mask = mask_from_fit(fit, cfg.policy);
  FeatureMatrix reduced = transform(x, mask);
  return {std::move(mask), std::move(reduced)};
}

}  // namespace msrf
