// msrf/pipeline.h

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

// Gender-gated late fusion of face and voice features.
//
// A binary gate trained on face features picks the Male or Female branch;
// that branch alone names the speaker. Each branch fuses one face row and
// one voice row (face first) and may select columns before fusion (per
// modality), after fusion, or both. At training time rows are routed by
// their true gender; at prediction time by the gate.

#ifndef MSRF_PIPELINE_H_
#define MSRF_PIPELINE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "msrf/classifiers.h"
#include "msrf/common.h"
#include "msrf/feature_selection.h"
#include "msrf/manifest.h"
#include "msrf/matrix.h"

namespace msrf {

enum class FusionStrategy { kSimpleConcat, kPreFS, kPostFS, kPrePostFS };

constexpr FusionStrategy kAllStrategies[] = {
    FusionStrategy::kSimpleConcat, FusionStrategy::kPreFS,
    FusionStrategy::kPostFS, FusionStrategy::kPrePostFS};

/// "simple-concat", "pre-fs", "post-fs", "pre-post-fs".
const char* strategy_name(FusionStrategy s);
/// Table captions: "Simple concatenation", "FS + concatenation", ...
const char* strategy_label(FusionStrategy s);
FusionStrategy parse_strategy(const std::string& text);  // ConfigError
bool has_pre_fs(FusionStrategy s);
bool has_post_fs(FusionStrategy s);

struct PipelineConfig {
  FusionStrategy strategy = FusionStrategy::kPrePostFS;
  bool genderless = false;
  FsConfig face_fs;
  FsConfig voice_fs;
  FsConfig fused_fs;
  ClassifierConfig classifier;  // final identity classifier
  ClassifierConfig gate;
  int workers = 1;
};

struct BranchModel {
  std::optional<Gender> gender;  // nullopt: genderless branch
  FusionStrategy strategy = FusionStrategy::kSimpleConcat;
  std::size_t face_dim = 0;
  std::size_t voice_dim = 0;
  std::optional<SelectionMask> face_mask;
  std::optional<SelectionMask> voice_mask;
  std::optional<SelectionMask> fused_mask;
  ClassifierModel classifier;
  double fs_seconds = 0.0;
  /// FS plus final classifier fit.
  double step3_seconds = 0.0;

  /// Width after per-modality masks and concatenation.
  std::size_t concat_width() const;
  /// Width entering the classifier.
  std::size_t fused_width() const;
  std::string name() const;  // "male", "female", "genderless"
};

struct FeatureSpec {
  std::size_t face_dim = 0;
  std::size_t voice_dim = 0;
  std::string face_tag;
  std::string voice_tag;
};

struct PipelineModel {
  std::optional<ClassifierModel> gate;  // absent in genderless mode
  std::optional<BranchModel> male;
  std::optional<BranchModel> female;
  std::optional<BranchModel> genderless;
  FeatureSpec feature_spec;
  FusionStrategy strategy = FusionStrategy::kPrePostFS;
  std::uint64_t seed = 0;
  double gate_seconds = 0.0;

  bool is_genderless() const { return genderless.has_value(); }
};

/// Binary gate on face rows; labels must be "Male"/"Female".
ClassifierModel train_gate(const FeatureMatrix& face,
                           const std::vector<std::string>& genders,
                           const ClassifierConfig& cfg, std::uint64_t seed);

/// Per-modality masks, face-then-voice concatenation, post-fusion mask.
std::vector<double> fuse(std::span<const double> face_row,
                         std::span<const double> voice_row,
                         const BranchModel& branch);
FeatureMatrix fuse_matrix(const FeatureMatrix& face, const FeatureMatrix& voice,
                          const BranchModel& branch);

/// Fits masks and the final classifier on the given rows. `row_genders`
/// must all equal `gender` (GenderLeak otherwise); it is ignored for a
/// genderless branch.
BranchModel train_branch(std::optional<Gender> gender, const FeatureMatrix& face,
                         const FeatureMatrix& voice,
                         const std::vector<std::string>& speakers,
                         std::span<const Gender> row_genders,
                         const PipelineConfig& cfg, std::uint64_t seed);

/// `face` and `voice` are aligned with manifest.records(); only Train rows
/// are used. Throws DegenerateBranch if a gender has fewer than 2 speakers
/// in the training rows (gated mode).
PipelineModel train_full(const Manifest& manifest, const FeatureMatrix& face,
                         const FeatureMatrix& voice, const PipelineConfig& cfg,
                         std::uint64_t seed);

struct IdentityPrediction {
  std::string speaker;
  std::optional<Gender> gender;  // routed gender; nullopt when genderless
  std::vector<double> scores;    // over the chosen branch's vocabulary
};

IdentityPrediction predict_identity(const PipelineModel& model,
                                    std::span<const double> face_row,
                                    std::span<const double> voice_row);
std::vector<IdentityPrediction> predict_identities(const PipelineModel& model,
                                                   const FeatureMatrix& face,
                                                   const FeatureMatrix& voice);

/// Directory layout: pipeline.json, gate/, branch-<name>/{face_mask.json,
/// voice_mask.json, fused_mask.json, classifier/}.
void save_pipeline(const PipelineModel& model, const PipelineConfig& cfg,
                   const std::filesystem::path& dir);
PipelineModel load_pipeline(const std::filesystem::path& dir);

}  // namespace msrf

#endif  // MSRF_PIPELINE_H_
