// msrf/test_classifiers.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>

#include "msrf/classifiers.h"
#include "msrf/common.h"
#include "msrf/synth.h"
#include "oracles.h"

using namespace msrf;

namespace {

constexpr ClassifierFamily kFamilies[] = {ClassifierFamily::kLinearSvm,
                                          ClassifierFamily::kLogReg,
                                          ClassifierFamily::kGaussianNB,
                                          ClassifierFamily::kRandomForest};

ClassifierConfig config_for(ClassifierFamily f) {
  ClassifierConfig c;
  c.family = f;
  c.forest.trees = 15;
  return c;
}

double accuracy(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::size_t hit = 0;
  for (std::size_t i = 0; i < a.size(); ++i) hit += a[i] == b[i];
  return static_cast<double>(hit) / static_cast<double>(a.size());
}

bool same_bits(const FeatureMatrix& a, const FeatureMatrix& b) {
  return a.rows() == b.rows() && a.cols() == b.cols() &&
         std::memcmp(a.data().data(), b.data().data(), a.data().size() * sizeof(double)) == 0;
}

}  // namespace

TEST_CASE("family names") {
  CHECK(parse_family("svm") == ClassifierFamily::kLinearSvm);
  CHECK(parse_family("LogReg") == ClassifierFamily::kLogReg);
  CHECK(parse_family("nb") == ClassifierFamily::kGaussianNB);
  CHECK(parse_family("RANDOMFOREST") == ClassifierFamily::kRandomForest);
  CHECK_THROWS_AS(parse_family("knn"), Error);
  for (auto f : kFamilies) {
    CHECK(parse_family(family_name(f)) == f);
    CHECK(parse_family(family_short(f)) == f);
  }
}

TEST_CASE("logistic regression gradient matches central differences") {
  Rng rng(21);
  const std::size_t n = 30, d = 5, k = 3;
  FeatureMatrix x(n, d);
  for (auto& v : x.data()) v = rng.normal();
  std::vector<std::size_t> y(n);
  for (auto& v : y) v = rng.below(k);
  const double l2 = 0.05;
  auto f = [&](const std::vector<double>& p) {
    return logreg_objective(x, y, k, l2, p, nullptr);
  };
  double worst = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<double> p(k * d + k);
    for (auto& v : p) v = rng.normal();
    std::vector<double> g;
    logreg_objective(x, y, k, l2, p, &g);
    REQUIRE(g.size() == p.size());
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double fd = oracle::central_diff(f, p, i, 1e-5);
      const double rel = std::abs(g[i] - fd) / std::max(1e-8, std::max(std::abs(g[i]), std::abs(fd)));
      worst = std::max(worst, rel);
    }
  }
  CHECK(worst < 1e-5);
}

TEST_CASE("logistic regression objective never increases") {
  PlantedData d = make_planted(150, 10, 4, 3, 1.5, 2);
  auto trace = logreg_loss_trace(d.x, d.y, {});
  REQUIRE(trace.size() == 101);
  CHECK(trace.front() == doctest::Approx(std::log(3.0)));
  for (std::size_t i = 1; i < trace.size(); ++i) CHECK(trace[i] <= trace[i - 1] + 1e-15);
  CHECK(trace.back() < 0.5 * trace.front());
}

TEST_CASE("Gaussian NB posteriors equal the closed-form Bayes oracle") {
  Rng rng(5);
  double worst = 0.0;
  for (int ds = 0; ds < 20; ++ds) {
    const std::size_t n = 12 + rng.below(20), d = 1 + rng.below(4), k = 2 + rng.below(3);
    std::vector<std::vector<double>> rows(n, std::vector<double>(d));
    std::vector<std::size_t> y(n);
    std::vector<std::string> ys(n);
    for (std::size_t i = 0; i < n; ++i) {
      y[i] = i % k;
      ys[i] = "c" + std::to_string(y[i]);
      for (auto& v : rows[i]) v = rng.normal() + 0.7 * static_cast<double>(y[i]);
    }
    FeatureMatrix x = FeatureMatrix::from_rows(rows);
    ClassifierConfig cfg;
    cfg.family = ClassifierFamily::kGaussianNB;
    ClassifierModel m = train(x, ys, cfg, 1);
    auto o = oracle::fit_gnb(rows, y, k, cfg.nb.var_floor);
    for (int q = 0; q < 5; ++q) {
      std::vector<double> probe(d);
      for (auto& v : probe) v = rng.normal();
      auto got = predict_scores_row(m, probe);
      auto want = oracle::gnb_posterior(o, probe);
      for (std::size_t c = 0; c < k; ++c) worst = std::max(worst, std::abs(got[c] - want[c]));
    }
  }
  CHECK(worst < 1e-12);
}

TEST_CASE("property: predict is the argmax of predict_scores, all families") {
  PlantedData d = make_planted(160, 12, 6, 4, 1.0, 8);
  for (auto f : kFamilies) {
    ClassifierModel m = train(d.x, d.y, config_for(f), 3);
    FeatureMatrix s = predict_scores(m, d.x);
    auto p = predict(m, d.x);
    for (std::size_t i = 0; i < d.x.rows(); ++i) {
      REQUIRE(p[i] == m.label_vocab[argmax(s.row(i))]);
      auto r = predict_scores_row(m, d.x.row(i));
      REQUIRE(std::equal(r.begin(), r.end(), s.row(i).begin()));
    }
  }
}

TEST_CASE("argmax ties go to the lowest index") {
  std::vector<double> v{1.0, 3.0, 3.0, 2.0};
  CHECK(argmax(v) == 1);
}

TEST_CASE("every family learns well separated classes") {
  PlantedData train_d = make_planted(300, 10, 10, 3, 4.0, 4);
  for (auto f : kFamilies) {
    ClassifierModel m = train(train_d.x, train_d.y, config_for(f), 1);
    CHECK_MESSAGE(accuracy(predict(m, train_d.x), train_d.y) > 0.97, family_name(f));
  }
}

TEST_CASE("probability families return distributions, forest returns vote fractions") {
  PlantedData d = make_planted(90, 6, 3, 3, 1.0, 12);
  for (auto f : {ClassifierFamily::kLogReg, ClassifierFamily::kGaussianNB,
                 ClassifierFamily::kRandomForest}) {
    ClassifierModel m = train(d.x, d.y, config_for(f), 2);
    FeatureMatrix s = predict_scores(m, d.x);
    for (std::size_t i = 0; i < s.rows(); ++i) {
      double sum = 0.0;
      for (double v : s.row(i)) {
        CHECK(v >= 0.0);
        sum += v;
      }
      CHECK(sum == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("property: a one-tree forest without bagging is plain CART") {
  PlantedData d = make_planted(120, 8, 4, 3, 1.0, 6);
  ClassifierConfig cfg;
  cfg.family = ClassifierFamily::kRandomForest;
  cfg.forest.trees = 1;
  cfg.forest.bootstrap = false;
  cfg.forest.max_features = 8;
  ClassifierModel m = train(d.x, d.y, cfg, 77);
  auto labels = encode_labels(d.y, m.label_vocab);
  DecisionTree t = fit_cart(d.x, labels, 3, {}, cfg.forest, 8, 1234);
  REQUIRE(m.trees.size() == 1);
  CHECK(m.trees[0].feature == t.feature);
  CHECK(m.trees[0].threshold == t.threshold);
  CHECK(m.trees[0].label == t.label);
  // Fully grown on distinct points: training rows are memorized.
  for (std::size_t i = 0; i < d.x.rows(); ++i) {
    REQUIRE(static_cast<std::size_t>(t.predict(d.x.row(i))) == labels[i]);
  }
}

TEST_CASE("CART root split minimizes weighted Gini (brute force)") {
  Rng rng(31);
  for (int ds = 0; ds < 10; ++ds) {
    const std::size_t n = 25, d = 3, k = 3;
    FeatureMatrix x(n, d);
    for (auto& v : x.data()) v = std::round(rng.normal() * 4.0) / 4.0;
    std::vector<std::size_t> y(n);
    for (auto& v : y) v = rng.below(k);
    DecisionTree t = fit_cart(x, y, k, {}, ForestConfig{}, 0, 1);
    auto gini_cost = [&](std::size_t f, double thr) {
      std::vector<double> l(k, 0.0), r(k, 0.0);
      for (std::size_t i = 0; i < n; ++i) (x(i, f) <= thr ? l : r)[y[i]] += 1.0;
      auto part = [](const std::vector<double>& c) {
        double m = 0.0, sq = 0.0;
        for (double v : c) {
          m += v;
          sq += v * v;
        }
        return m == 0.0 ? -1.0 : m - sq / m;
      };
      double a = part(l), b = part(r);
      return (a < 0 || b < 0) ? 1e300 : a + b;
    };
    double best = 1e300;
    for (std::size_t f = 0; f < d; ++f)
      for (std::size_t i = 0; i < n; ++i) best = std::min(best, gini_cost(f, x(i, f)));
    REQUIRE(t.feature[0] >= 0);
    CHECK(gini_cost(static_cast<std::size_t>(t.feature[0]), t.threshold[0]) ==
          doctest::Approx(best).epsilon(1e-12));
  }
}

TEST_CASE("property: save/load reproduces scores bit for bit") {
  PlantedData d = make_planted(100, 9, 4, 4, 1.0, 10);
  auto dir = oracle::scratch_dir("clf");
  for (auto f : kFamilies) {
    ClassifierModel m = train(d.x, d.y, config_for(f), 4);
    auto sub = dir / family_short(f);
    save_model(m, sub);
    ClassifierModel back = load_model(sub);
    CHECK(back.family == f);
    CHECK(back.label_vocab == m.label_vocab);
    CHECK(back.input_dim == m.input_dim);
    CHECK(same_bits(predict_scores(back, d.x), predict_scores(m, d.x)));
  }
  CHECK_THROWS_AS(load_model(dir / "absent"), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("training is deterministic in the seed") {
  PlantedData d = make_planted(80, 6, 3, 3, 1.0, 3);
  for (auto f : kFamilies) {
    ClassifierModel a = train(d.x, d.y, config_for(f), 5);
    ClassifierModel b = train(d.x, d.y, config_for(f), 5);
    CHECK(same_bits(predict_scores(a, d.x), predict_scores(b, d.x)));
  }
}

TEST_CASE("forest workers do not change the model") {
  PlantedData d = make_planted(80, 6, 3, 3, 1.0, 3);
  ClassifierConfig c1 = config_for(ClassifierFamily::kRandomForest), c4 = c1;
  c4.forest.workers = 4;
  CHECK(same_bits(predict_scores(train(d.x, d.y, c1, 9), d.x),
                  predict_scores(train(d.x, d.y, c4, 9), d.x)));
}

TEST_CASE("input validation") {
  FeatureMatrix x = FeatureMatrix::from_rows({{0, 1}, {1, 0}, {2, 2}});
  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kIoError;
  };
  CHECK(code([&] { train(x, {"a", "a", "a"}, {}, 1); }) == ErrorCode::kDegenerateLabels);
  CHECK(code([&] { train(x, {"a", "b"}, {}, 1); }) == ErrorCode::kDimensionMismatch);
  FeatureMatrix bad = x;
  bad(1, 1) = std::nan("");
  CHECK(code([&] { train(bad, {"a", "b", "a"}, {}, 1); }) == ErrorCode::kNonFiniteInput);
  ClassifierModel m = train(x, {"a", "b", "a"}, {}, 1);
  FeatureMatrix wide(1, 3);
  CHECK(code([&] { predict(m, wide); }) == ErrorCode::kDimensionMismatch);
}
