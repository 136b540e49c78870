// msrf/acceptance.cc

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

// Acceptance suite: one PASS/FAIL line per criterion, exit 1 if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "msrf/audio.h"
#include "msrf/classifiers.h"
#include "msrf/cli.h"
#include "msrf/common.h"
#include "msrf/evaluation.h"
#include "msrf/feature_selection.h"
#include "msrf/pipeline.h"
#include "msrf/synth.h"
#include "oracles.h"

using namespace msrf;
namespace fs = std::filesystem;

namespace {

// Pinned tolerances.
constexpr double kMaxSecondsPerClip = 1.0;
constexpr double kDftTol = 1e-9;
constexpr double kDctTol = 1e-10;
constexpr double kGradRelTol = 1e-5;
constexpr double kGnbTol = 1e-12;
constexpr double kMinRecovery = 0.80;
constexpr std::size_t kMaxKept = 60;
constexpr double kMaxFsSeconds = 10.0;
constexpr double kMinGenderOffsetSd = 6.0;
constexpr double kFusionMargin = 5.0;     // points over each modality
constexpr double kConcatSlack = 0.5;      // points below SimpleConcat allowed
constexpr double kMaxWidthShare = 0.50;   // PrePostFS width / SimpleConcat width
constexpr double kMaxTimingRatio = 0.75;
constexpr int kTimingRuns = 3;
constexpr std::uint64_t kSeed = 7;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char b[64];
  std::snprintf(b, sizeof b, f, a);
  return b;
}

AudioClip random_clip(std::uint64_t seed) {
  AudioClip c;
  Rng rng(seed);
  c.samples.resize(64000);
  for (auto& s : c.samples) s = 0.3 * (2.0 * rng.uniform() - 1.0);
  return c;
}

struct Corpus {
  SynthCorpus c;
  FeatureMatrix face, voice;
};

Corpus corpus(double extra_noise) {
  SynthConfig s;
  s.extra_noise_fraction = extra_noise;
  Corpus k{make_corpus(s, kSeed), {}, {}};
  k.face = align(k.c.face, k.c.manifest);
  k.voice = align(k.c.voice, k.c.manifest);
  return k;
}

Outcome c1_dimensions() {
  std::string bad;
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 3; ++seed) {
    AudioClip clip = random_clip(seed);
    auto t = Clock::now();
    if (mfcc_features(clip).size() != 5200) bad += " mfcc";
    worst = std::max(worst, seconds_since(t));
    t = Clock::now();
    if (dmfcc_features(clip).size() != 5200) bad += " dmfcc";
    worst = std::max(worst, seconds_since(t));
    t = Clock::now();
    if (fbank_features(clip).size() != 10400) bad += " fbank";
    worst = std::max(worst, seconds_since(t));
    t = Clock::now();
    SpectroImage s = spectrogram_image(clip);
    worst = std::max(worst, seconds_since(t));
    if (s.values.rows() != 257 || s.values.cols() != 400) bad += " spectrogram";
  }
  return {bad.empty() && worst < kMaxSecondsPerClip,
          (bad.empty() ? std::string("shapes ok") : "bad shape:" + bad) +
              ", slowest kind " + fmt("%.3f s", worst) + " per clip"};
}

Outcome c2_dsp_oracles() {
  Rng rng(42);
  FrameGrid g;
  g.frame_len = 400;
  g.hop = 160;
  g.frames = FeatureMatrix(100, 400);
  for (auto& v : g.frames.data()) v = 2.0 * rng.uniform() - 1.0;
  FeatureMatrix p = power_spectrum(g, 512);
  double dft = 0.0;
  for (std::size_t t = 0; t < 100; ++t) {
    auto row = g.frames.row(t);
    auto ref = oracle::dft_power({row.begin(), row.end()}, 512);
    for (std::size_t k = 0; k < ref.size(); ++k) dft = std::max(dft, std::abs(p(t, k) - ref[k]));
  }
  double dct = 0.0;
  for (std::size_t n : {13u, 26u, 40u}) {
    FeatureMatrix d = dct2_matrix(n);
    for (int rep = 0; rep < 20; ++rep) {
      std::vector<double> x(n);
      for (auto& v : x) v = rng.normal();
      auto ref = oracle::dct2(x);
      for (std::size_t k = 0; k < n; ++k) {
        double s = 0.0;
        for (std::size_t t = 0; t < n; ++t) s += d(k, t) * x[t];
        dct = std::max(dct, std::abs(s - ref[k]));
      }
    }
  }
  return {dft <= kDftTol && dct <= kDctTol,
          "max |DFT err| " + fmt("%.2e", dft) + ", max |DCT err| " + fmt("%.2e", dct)};
}

Outcome c3_optimization() {
  Rng rng(21);
  const std::size_t n = 30, d = 5, k = 3;
  FeatureMatrix x(n, d);
  for (auto& v : x.data()) v = rng.normal();
  std::vector<std::size_t> y(n);
  for (auto& v : y) v = rng.below(k);
  auto f = [&](const std::vector<double>& p) {
    return logreg_objective(x, y, k, 0.05, p, nullptr);
  };
  double grad = 0.0;
  for (int point = 0; point < 10; ++point) {
    std::vector<double> p(k * d + k);
    for (auto& v : p) v = rng.normal();
    std::vector<double> g;
    logreg_objective(x, y, k, 0.05, p, &g);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const double fd = oracle::central_diff(f, p, i, 1e-5);
      grad = std::max(grad, std::abs(g[i] - fd) /
                                std::max(1e-8, std::max(std::abs(g[i]), std::abs(fd))));
    }
  }
  double gnb = 0.0;
  for (int ds = 0; ds < 20; ++ds) {
    const std::size_t m = 12 + rng.below(20), dim = 1 + rng.below(4), kc = 2 + rng.below(3);
    std::vector<std::vector<double>> rows(m, std::vector<double>(dim));
    std::vector<std::size_t> yi(m);
    std::vector<std::string> ys(m);
    for (std::size_t i = 0; i < m; ++i) {
      yi[i] = i % kc;
      ys[i] = "c" + std::to_string(yi[i]);
      for (auto& v : rows[i]) v = rng.normal() + 0.7 * static_cast<double>(yi[i]);
    }
    ClassifierConfig cfg;
    cfg.family = ClassifierFamily::kGaussianNB;
    ClassifierModel model = train(FeatureMatrix::from_rows(rows), ys, cfg, 1);
    auto o = oracle::fit_gnb(rows, yi, kc, cfg.nb.var_floor);
    for (int q = 0; q < 5; ++q) {
      std::vector<double> probe(dim);
      for (auto& v : probe) v = rng.normal();
      auto got = predict_scores_row(model, probe);
      auto want = oracle::gnb_posterior(o, probe);
      for (std::size_t c = 0; c < kc; ++c) gnb = std::max(gnb, std::abs(got[c] - want[c]));
    }
  }
  return {grad <= kGradRelTol && gnb <= kGnbTol,
          "max grad rel err " + fmt("%.2e", grad) + ", max GNB err " + fmt("%.2e", gnb)};
}

Outcome c4_fs_recovery() {
  PlantedData d = make_planted(400, 200, 10, 4, 2.5, 17);
  auto t = Clock::now();
  auto [mask, xs] = fit_select(d.x, d.y, FsConfig{}, 3);
  const double secs = seconds_since(t);
  std::size_t hit = 0;
  for (auto j : d.informative) {
    hit += std::binary_search(mask.kept.begin(), mask.kept.end(), j);
  }
  const double rec = static_cast<double>(hit) / static_cast<double>(d.informative.size());
  return {rec >= kMinRecovery && mask.output_dim() <= kMaxKept && secs < kMaxFsSeconds,
          "recovered " + std::to_string(hit) + "/10, kept " +
              std::to_string(mask.output_dim()) + " columns in " + fmt("%.2f s", secs)};
}

Outcome c5_gate(const Corpus& k) {
  SynthConfig s;
  if (s.gender_offset / s.noise < kMinGenderOffsetSd) {
    return {false, "corpus gender offset below 6 sd"};
  }
  PipelineModel m = train_full(k.c.manifest, k.face, k.voice, PipelineConfig{}, kSeed);
  std::vector<std::size_t> rows = k.c.manifest.indices(Split::kVal);
  auto test = k.c.manifest.indices(Split::kTest);
  rows.insert(rows.end(), test.begin(), test.end());
  std::vector<std::string> spk;
  std::vector<Gender> gen;
  for (auto i : rows) {
    spk.push_back(k.c.manifest.records()[i].speaker);
    gen.push_back(k.c.manifest.records()[i].gender);
  }
  PipelineEval ev =
      evaluate_pipeline(m, k.face.select_rows(rows), k.voice.select_rows(rows), spk, gen);
  const bool ok = ev.gate && ev.gate->correct == ev.gate->n_samples;
  return {ok, "gate " + std::to_string(ev.gate ? ev.gate->correct : 0) + "/" +
                  std::to_string(rows.size()) + " held-out rows, offset " +
                  fmt("%.1f sd", s.gender_offset / s.noise)};
}

Outcome c6_multimodal(const Corpus& k) {
  PipelineConfig cfg;
  cfg.strategy = FusionStrategy::kPrePostFS;
  ModalityReport r = modality_comparison(k.c.manifest, k.face, k.voice, cfg, kSeed);
  const ModalityRow& total = r.rows.back();
  const bool ok = total.multimodal - total.image >= kFusionMargin &&
                  total.multimodal - total.voice >= kFusionMargin;
  return {ok, "fused " + fmt("%.2f", total.multimodal) + " vs face " +
                  fmt("%.2f", total.image) + ", voice " + fmt("%.2f", total.voice)};
}

Outcome c7_fs_trend(const Corpus& k) {
  StrategyReport r = strategy_comparison(k.c.manifest, k.face, k.voice, PipelineConfig{}, kSeed);
  const StrategyRow& base = r.row(FusionStrategy::kSimpleConcat);
  bool floor_ok = true, any_above = false;
  std::string detail = "concat " + fmt("%.2f", base.pipeline);
  for (auto s : {FusionStrategy::kPreFS, FusionStrategy::kPostFS, FusionStrategy::kPrePostFS}) {
    const double a = r.row(s).pipeline;
    floor_ok = floor_ok && a >= base.pipeline - kConcatSlack;
    any_above = any_above || a > base.pipeline;
    detail += std::string(", ") + strategy_name(s) + " " + fmt("%.2f", a);
  }
  const double share = static_cast<double>(r.row(FusionStrategy::kPrePostFS).fused_width) /
                       static_cast<double>(base.fused_width);
  detail += "; width " + std::to_string(r.row(FusionStrategy::kPrePostFS).fused_width) + "/" +
            std::to_string(base.fused_width);
  return {floor_ok && any_above && share <= kMaxWidthShare, detail};
}

Outcome c8_timing(const Corpus& k) {
  PipelineConfig cfg;
  cfg.classifier.family = ClassifierFamily::kLinearSvm;
  bool ok = true;
  double worst = 0.0;
  for (int run = 0; run < kTimingRuns; ++run) {
    TimingReport r = timing_comparison(k.c.manifest, k.face, k.voice, cfg, kSeed);
    for (auto s : kAllStrategies) {
      const double q = r.ratio(s);
      worst = std::max(worst, q);
      ok = ok && q <= kMaxTimingRatio;
    }
  }
  return {ok, "worst (male+female)/genderless ratio over " + std::to_string(kTimingRuns) +
                  " runs " + fmt("%.3f", worst)};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Outcome c9_determinism() {
  fs::path root = oracle::scratch_dir("acceptance_c9");
  std::ostringstream out, err;
  auto cli = [&](std::vector<std::string> a) { return run_cli(a, out, err); };
  if (cli({"synth", "--out", (root / "data").string(), "--seed", "5"}) != 0) {
    return {false, "synth failed: " + err.str()};
  }
  const std::string m = (root / "data" / "manifest.csv").string();
  const std::string face = (root / "data" / "face.msrf").string();
  const std::string voice = (root / "data" / "voice.msrf").string();
  std::set<std::string> reports, texts;
  int runs = 0;
  for (const char* family : {"svm", "rf"}) {
    for (const char* workers : {"1", "4", "1", "4"}) {
      const fs::path dir = root / ("run" + std::to_string(runs++));
      if (cli({"train", "--manifest", m, "--face", face, "--voice", voice, "--out",
               (dir / "model").string(), "--seed", "11", "--workers", workers,
               "--classifier", family}) != 0 ||
          cli({"evaluate", "--model", (dir / "model").string(), "--manifest", m, "--face",
               face, "--voice", voice, "--out", (dir / "eval").string(), "--workers",
               workers}) != 0) {
        return {false, "train/evaluate failed: " + err.str()};
      }
      reports.insert(std::string(family) + slurp(dir / "eval" / "report.json"));
      texts.insert(std::string(family) + slurp(dir / "eval" / "report.txt"));
    }
  }
  fs::remove_all(root);
  return {reports.size() == 2 && texts.size() == 2,
          std::to_string(runs) + " runs (svm, rf at workers 1 and 4): " +
              std::to_string(reports.size()) + " distinct reports for 2 families"};
}

}  // namespace

int main() {
  const auto t0 = Clock::now();
  Corpus plain = corpus(0.0);
  Corpus noisy = corpus(0.75);
  std::vector<std::pair<std::string, std::function<Outcome()>>> checks = {
      {"1 dimensional contracts", c1_dimensions},
      {"2 DSP oracle equivalence", c2_dsp_oracles},
      {"3 optimization correctness", c3_optimization},
      {"4 feature-selection recovery", c4_fs_recovery},
      {"5 gender gate accuracy", [&] { return c5_gate(plain); }},
      {"6 multimodal fusion margin", [&] { return c6_multimodal(plain); }},
      {"7 feature-selection trend", [&] { return c7_fs_trend(noisy); }},
      {"8 per-gender timing ratio", [&] { return c8_timing(plain); }},
      {"9 determinism across workers", c9_determinism},
  };
  int failed = 0;
  for (const auto& [name, fn] : checks) {
    Outcome o;
    try {
      o = fn();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    failed += !o.pass;
    std::cout << (o.pass ? "PASS" : "FAIL") << "  criterion " << name << ": " << o.detail
              << std::endl;
  }
  const double total = seconds_since(t0);
  std::cout << "total " << fmt("%.1f s", total) << ", " << (9 - failed) << "/9 passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}
