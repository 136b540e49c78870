// msrf/evaluation.h

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

// Accuracy reports, the extractor x classifier x FS x population ablation
// grid, modality and fusion-strategy comparisons, and step-3 timing.
//
// Every report renders to JSON and to a fixed-width text table. Wall-clock
// figures are kept out of the deterministic JSON unless asked for, so two
// runs with the same seed produce byte-identical files.

#ifndef MSRF_EVALUATION_H_
#define MSRF_EVALUATION_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "msrf/classifiers.h"
#include "msrf/manifest.h"
#include "msrf/pipeline.h"

namespace msrf {

struct EvalReport {
  std::vector<std::string> labels;  // sorted union of truth and predictions
  std::vector<std::vector<std::size_t>> confusion;  // [true][predicted]
  std::size_t n_samples = 0;
  std::size_t correct = 0;
  double accuracy = 0.0;
  std::map<std::string, double> per_class_accuracy;  // labels seen in truth
  double fit_seconds = 0.0;
  double predict_seconds = 0.0;

  nlohmann::ordered_json to_json(bool with_timing = false) const;
  std::string to_text() const;
};

/// Throws DimensionMismatch when the lengths differ.
EvalReport score_predictions(const std::vector<std::string>& truth,
                             const std::vector<std::string>& predicted);

EvalReport evaluate(const ClassifierModel& model, const FeatureMatrix& x,
                    const std::vector<std::string>& y);

struct PipelineEval {
  EvalReport identity;
  std::optional<EvalReport> gate;  // routed gender vs true gender
};

PipelineEval evaluate_pipeline(const PipelineModel& model, const FeatureMatrix& face,
                               const FeatureMatrix& voice,
                               const std::vector<std::string>& speakers,
                               const std::vector<Gender>& genders);

// ---------------------------------------------------------------------------
// Ablation grid

enum class Extractor { kSpectrogram, kWaveform, kMfcc, kDmfcc, kFbank, kFace };
enum class Population { kMale, kFemale, kAll };

constexpr Extractor kAllExtractors[] = {Extractor::kSpectrogram, Extractor::kWaveform,
                                        Extractor::kMfcc,        Extractor::kDmfcc,
                                        Extractor::kFbank,       Extractor::kFace};

const char* extractor_key(Extractor e);    // "spectrogram", ..., "face"
const char* extractor_label(Extractor e);  // "Spectrogram", ..., "VGG"
Extractor parse_extractor(const std::string& key);  // ConfigError
const char* population_key(Population p);    // "male", "female", "all"
const char* population_label(Population p);   // "M", "F", "All"
Population parse_population(const std::string& key);

struct GridSpec {
  std::vector<Extractor> extractors;
  std::vector<ClassifierFamily> classifiers;
  std::vector<bool> fs;  // false = raw features, true = fit_select first
  std::vector<Population> populations;

  std::size_t cell_count() const {
    return extractors.size() * classifiers.size() * fs.size() * populations.size();
  }
  /// Table-1 shape for the given extractors: every classifier, FS off/on,
  /// Male and Female.
  static GridSpec table(std::vector<Extractor> extractors);
};

struct CellCoord {
  Extractor extractor;
  ClassifierFamily classifier;
  bool fs;
  Population population;

  bool operator==(const CellCoord&) const = default;
};

struct AblationCell {
  CellCoord coord;
  bool ok = false;
  std::string error;
  EvalReport report;
  std::size_t input_dim = 0;
  std::size_t selected_dim = 0;
};

struct AblationGrid {
  GridSpec spec;
  std::vector<AblationCell> cells;  // canonical order, see run_ablation

  const AblationCell* find(const CellCoord& c) const;
  nlohmann::ordered_json to_json(bool with_timing = false) const;
  /// Rows "<Extractor>(<pop>)[ + FS]", columns RF NB LR SVM (requested ones).
  std::string to_text() const;
};

struct AblationConfig {
  FsConfig fs;
  ClassifierConfig classifier;  // family is overridden per cell
  int workers = 1;
};

/// Every source is aligned with manifest.records(). Cells are enumerated
/// extractor-major (extractor, population, fs, classifier), each trained on
/// its population's Train rows and scored on its Test rows with a seed
/// derived from the cell coordinates. A failing cell is recorded and the
/// grid continues.
AblationGrid run_ablation(const Manifest& manifest,
                          const std::map<Extractor, FeatureMatrix>& sources,
                          const GridSpec& spec, const AblationConfig& cfg,
                          std::uint64_t seed);

// ---------------------------------------------------------------------------
// Modality and fusion-strategy comparisons

struct ModalityRow {
  std::string population;  // "Male", "Female", "Total (Genderless)"
  double image = 0.0;      // accuracies in percent
  double voice = 0.0;
  double multimodal = 0.0;
};

struct ModalityReport {
  FusionStrategy strategy = FusionStrategy::kPrePostFS;
  std::vector<ModalityRow> rows;

  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

/// Per population: face-only, voice-only (with per-modality FS unless the
/// strategy is SimpleConcat) and fused accuracy on Test rows. Male and
/// Female rows use branches trained on that gender; the Total row uses one
/// genderless branch over all speakers.
ModalityReport modality_comparison(const Manifest& manifest, const FeatureMatrix& face,
                                   const FeatureMatrix& voice,
                                   const PipelineConfig& cfg, std::uint64_t seed);

struct StrategyRow {
  FusionStrategy strategy = FusionStrategy::kSimpleConcat;
  double male = 0.0;  // gated pipeline accuracy on male Test rows, percent
  double female = 0.0;
  double average = 0.0;     // (male + female) / 2
  double pipeline = 0.0;    // gated pipeline accuracy on all Test rows
  double genderless = 0.0;  // genderless pipeline on all Test rows
  std::size_t fused_width = 0;             // widest gated branch
  std::size_t genderless_fused_width = 0;
  std::size_t input_width = 0;             // face + voice
};

struct StrategyReport {
  std::vector<StrategyRow> rows;

  const StrategyRow& row(FusionStrategy s) const;
  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

StrategyReport strategy_comparison(const Manifest& manifest, const FeatureMatrix& face,
                                   const FeatureMatrix& voice,
                                   const PipelineConfig& cfg, std::uint64_t seed,
                                   const std::vector<FusionStrategy>& strategies = {
                                       std::begin(kAllStrategies),
                                       std::end(kAllStrategies)});

// ---------------------------------------------------------------------------
// Timing

struct TimingCell {
  FusionStrategy strategy = FusionStrategy::kSimpleConcat;
  std::string population;  // "Male", "Female", "Genderless"
  std::size_t rows = 0;
  std::size_t classes = 0;
  std::size_t fused_width = 0;
  double fs_seconds = 0.0;
  double step3_seconds = 0.0;
};

struct TimingReport {
  std::vector<TimingCell> cells;  // strategy-major, Male/Female/Genderless

  const TimingCell& cell(FusionStrategy s, const std::string& population) const;
  /// (Male + Female) / Genderless step-3 seconds.
  double ratio(FusionStrategy s) const;
  nlohmann::ordered_json to_json() const;
  std::string to_text() const;
};

/// Trains Male, Female and genderless branches on the Train rows for each
/// strategy, serially, and records step-3 (FS + classifier fit) time.
TimingReport timing_comparison(const Manifest& manifest, const FeatureMatrix& face,
                               const FeatureMatrix& voice, const PipelineConfig& cfg,
                               std::uint64_t seed,
                               const std::vector<FusionStrategy>& strategies = {
                                   std::begin(kAllStrategies),
                                   std::end(kAllStrategies)});

}  // namespace msrf

#endif  // MSRF_EVALUATION_H_
