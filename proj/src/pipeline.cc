// msrf/pipeline.cc

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

#include "msrf/pipeline.h"

#include <fstream>
#include <set>
#include <sstream>

#include "msrf/config_json.h"

namespace msrf {

namespace {

constexpr int kPipelineFormatVersion = 1;

void check_rows(const BranchModel& b, std::size_t face, std::size_t voice) {
  if (face != b.face_dim || voice != b.voice_dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "branch " + b.name() + " expects face/voice widths " +
                    std::to_string(b.face_dim) + "/" + std::to_string(b.voice_dim) +
                    ", got " + std::to_string(face) + "/" + std::to_string(voice));
  }
}

const BranchModel& route(const PipelineModel& m, std::span<const double> face_row) {
  if (m.genderless) return *m.genderless;
  auto scores = predict_scores_row(*m.gate, face_row);
  const std::string& g = m.gate->label_vocab[argmax(scores)];
  return g == "Male" ? *m.male : *m.female;
}

std::string read_text(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + p.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + p.string());
  out << text;
}

void save_branch(const BranchModel& b, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  if (b.face_mask) write_text(dir / "face_mask.json", b.face_mask->to_json() + "\n");
  if (b.voice_mask) write_text(dir / "voice_mask.json", b.voice_mask->to_json() + "\n");
  if (b.fused_mask) write_text(dir / "fused_mask.json", b.fused_mask->to_json() + "\n");
  save_model(b.classifier, dir / "classifier");
}

Json branch_summary(const BranchModel& b) {
  Json j;
  j["name"] = b.name();
  j["gender"] = b.gender ? gender_name(*b.gender) : "none";
  j["strategy"] = strategy_name(b.strategy);
  j["face_dim"] = b.face_dim;
  j["voice_dim"] = b.voice_dim;
  j["face_kept"] = b.face_mask ? b.face_mask->output_dim() : b.face_dim;
  j["voice_kept"] = b.voice_mask ? b.voice_mask->output_dim() : b.voice_dim;
  j["concat_width"] = b.concat_width();
  j["fused_width"] = b.fused_width();
  j["classes"] = b.classifier.num_classes();
  j["fs_seconds"] = b.fs_seconds;
  j["step3_seconds"] = b.step3_seconds;
  return j;
}

BranchModel load_branch(const nlohmann::json& summary,
                        const std::filesystem::path& dir) {
  BranchModel b;
  const auto g = summary.at("gender").get<std::string>();
  if (g != "none") b.gender = parse_gender(g);
  b.strategy = parse_strategy(summary.at("strategy").get<std::string>());
  b.face_dim = summary.at("face_dim").get<std::size_t>();
  b.voice_dim = summary.at("voice_dim").get<std::size_t>();
  b.fs_seconds = summary.at("fs_seconds").get<double>();
  b.step3_seconds = summary.at("step3_seconds").get<double>();
  if (has_pre_fs(b.strategy)) {
    b.face_mask = SelectionMask::from_json(read_text(dir / "face_mask.json"));
    b.voice_mask = SelectionMask::from_json(read_text(dir / "voice_mask.json"));
  }
  if (has_post_fs(b.strategy)) {
    b.fused_mask = SelectionMask::from_json(read_text(dir / "fused_mask.json"));
  }
  b.classifier = load_model(dir / "classifier");
  if (b.classifier.input_dim != b.fused_width()) {
    throw Error(ErrorCode::kCorruptFile,
                dir.string() + ": classifier width does not match mask chain");
  }
  return b;
}

}  // namespace

const char* strategy_name(FusionStrategy s) {
  switch (s) {
    case FusionStrategy::kSimpleConcat: return "simple-concat";
    case FusionStrategy::kPreFS: return "pre-fs";
    case FusionStrategy::kPostFS: return "post-fs";
    case FusionStrategy::kPrePostFS: return "pre-post-fs";
  }
  return "simple-concat";
}

const char* strategy_label(FusionStrategy s) {
  switch (s) {
    case FusionStrategy::kSimpleConcat: return "Simple concatenation";
    case FusionStrategy::kPreFS: return "FS + concatenation";
    case FusionStrategy::kPostFS: return "Concatenation + FS";
    case FusionStrategy::kPrePostFS: return "FS + concatenation + FS";
  }
  return "";
}

FusionStrategy parse_strategy(const std::string& text) {
  for (auto s : kAllStrategies) {
    if (text == strategy_name(s)) return s;
  }
  throw Error(ErrorCode::kConfigError,
              "unknown strategy '" + text +
                  "' (want simple-concat|pre-fs|post-fs|pre-post-fs)");
}

bool has_pre_fs(FusionStrategy s) {
  return s == FusionStrategy::kPreFS || s == FusionStrategy::kPrePostFS;
}

bool has_post_fs(FusionStrategy s) {
  return s == FusionStrategy::kPostFS || s == FusionStrategy::kPrePostFS;
}

std::size_t BranchModel::concat_width() const {
  return (face_mask ? face_mask->output_dim() : face_dim) +
         (voice_mask ? voice_mask->output_dim() : voice_dim);
}

std::size_t BranchModel::fused_width() const {
  return fused_mask ? fused_mask->output_dim() : concat_width();
}

std::string BranchModel::name() const {
  if (!gender) return "genderless";
  return *gender == Gender::kMale ? "male" : "female";
}

ClassifierModel train_gate(const FeatureMatrix& face,
                           const std::vector<std::string>& genders,
                           const ClassifierConfig& cfg, std::uint64_t seed) {
  for (const auto& g : genders) {
    if (g != "Male" && g != "Female") {
      throw Error(ErrorCode::kPrecondition, "gate label '" + g + "' is not Male/Female");
    }
  }
  if (make_vocab(genders).size() < 2) {
    throw Error(ErrorCode::kDegenerateLabels, "gate needs both genders");
  }
  return train(face, genders, cfg, seed);
}

std::vector<double> fuse(std::span<const double> face_row,
                         std::span<const double> voice_row,
                         const BranchModel& b) {
  check_rows(b, face_row.size(), voice_row.size());
  std::vector<double> out;
  out.reserve(b.concat_width());
  if (b.face_mask) {
    for (std::size_t j : b.face_mask->kept) out.push_back(face_row[j]);
  } else {
    out.insert(out.end(), face_row.begin(), face_row.end());
  }
  if (b.voice_mask) {
    for (std::size_t j : b.voice_mask->kept) out.push_back(voice_row[j]);
  } else {
    out.insert(out.end(), voice_row.begin(), voice_row.end());
  }
  if (b.fused_mask) return transform_row(out, *b.fused_mask);
  return out;
}

FeatureMatrix fuse_matrix(const FeatureMatrix& face, const FeatureMatrix& voice,
                          const BranchModel& b) {
  if (face.rows() != voice.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "face and voice row counts differ");
  }
  check_rows(b, face.cols(), voice.cols());
  FeatureMatrix f = b.face_mask ? transform(face, *b.face_mask) : face;
  FeatureMatrix v = b.voice_mask ? transform(voice, *b.voice_mask) : voice;
  FeatureMatrix cat = f.hconcat(v);
  return b.fused_mask ? transform(cat, *b.fused_mask) : cat;
}

BranchModel train_branch(std::optional<Gender> gender, const FeatureMatrix& face,
                         const FeatureMatrix& voice,
                         const std::vector<std::string>& speakers,
                         std::span<const Gender> row_genders,
                         const PipelineConfig& cfg, std::uint64_t seed) {
  if (face.rows() != voice.rows() || face.rows() != speakers.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "branch inputs are not aligned (face " + std::to_string(face.rows()) +
                    ", voice " + std::to_string(voice.rows()) + ", labels " +
                    std::to_string(speakers.size()) + ")");
  }
  if (gender) {
    if (row_genders.size() != speakers.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "row genders not aligned");
    }
    for (std::size_t i = 0; i < row_genders.size(); ++i) {
      if (row_genders[i] != *gender) {
        throw Error(ErrorCode::kGenderLeak,
                    std::string(gender_name(row_genders[i])) + " row " +
                        std::to_string(i) + " (speaker '" + speakers[i] +
                        "') in " + gender_name(*gender) + " branch");
      }
    }
  }
  BranchModel b;
  b.gender = gender;
  b.strategy = cfg.strategy;
  b.face_dim = face.cols();
  b.voice_dim = voice.cols();

  Stopwatch step3;
  FeatureMatrix f = face, v = voice;
  if (has_pre_fs(cfg.strategy)) {
    auto [fm, fx] = fit_select(face, speakers, cfg.face_fs, derive_seed(seed, {1}));
    auto [vm, vx] = fit_select(voice, speakers, cfg.voice_fs, derive_seed(seed, {2}));
    b.face_mask = std::move(fm);
    b.voice_mask = std::move(vm);
    f = std::move(fx);
    v = std::move(vx);
  }
  FeatureMatrix fused = f.hconcat(v);
  if (has_post_fs(cfg.strategy)) {
    auto [m, x] = fit_select(fused, speakers, cfg.fused_fs, derive_seed(seed, {3}));
    b.fused_mask = std::move(m);
    fused = std::move(x);
  }
  b.fs_seconds = step3.seconds();
  b.classifier = train(fused, speakers, cfg.classifier, derive_seed(seed, {4}));
  b.step3_seconds = step3.seconds();
  return b;
}

PipelineModel train_full(const Manifest& manifest, const FeatureMatrix& face,
                         const FeatureMatrix& voice, const PipelineConfig& cfg,
                         std::uint64_t seed) {
  if (face.rows() != manifest.size() || voice.rows() != manifest.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                "feature rows do not match manifest size " +
                    std::to_string(manifest.size()));
  }
  const auto train_idx = manifest.indices(Split::kTrain);
  if (train_idx.empty()) {
    throw Error(ErrorCode::kPrecondition, "manifest has no train rows");
  }
  PipelineModel m;
  m.strategy = cfg.strategy;
  m.seed = seed;
  m.feature_spec = {face.cols(), voice.cols(), face.tag(), voice.tag()};

  auto rows_of = [&](std::optional<Gender> g) {
    std::vector<std::size_t> idx;
    for (std::size_t i : train_idx) {
      if (!g || manifest.records()[i].gender == *g) idx.push_back(i);
    }
    return idx;
  };
  auto branch_for = [&](std::optional<Gender> g, std::uint64_t tag) {
    const auto idx = rows_of(g);
    std::vector<Gender> genders;
    for (std::size_t i : idx) genders.push_back(manifest.records()[i].gender);
    return train_branch(g, face.select_rows(idx), voice.select_rows(idx),
                        manifest.speakers_at(idx), genders, cfg,
                        derive_seed(seed, {tag}));
  };

  if (cfg.genderless) {
    m.genderless = branch_for(std::nullopt, 30);
    return m;
  }

  for (Gender g : {Gender::kMale, Gender::kFemale}) {
    std::set<std::string> speakers;
    for (std::size_t i : rows_of(g)) speakers.insert(manifest.records()[i].speaker);
    if (speakers.size() < 2) {
      throw Error(ErrorCode::kDegenerateBranch,
                  std::string(gender_name(g)) + " branch has " +
                      std::to_string(speakers.size()) +
                      " training speaker(s); need at least 2");
    }
  }

  std::vector<std::string> gate_labels;
  for (std::size_t i : train_idx) {
    gate_labels.push_back(gender_name(manifest.records()[i].gender));
  }
  Stopwatch gate_clock;
  m.gate = train_gate(face.select_rows(train_idx), gate_labels, cfg.gate,
                      derive_seed(seed, {10}));
  m.gate_seconds = gate_clock.seconds();

  std::vector<BranchModel> branches(2);
  parallel_for(2, cfg.workers, [&](std::size_t b) {
    branches[b] = b == 0 ? branch_for(Gender::kMale, 20)
                         : branch_for(Gender::kFemale, 21);
  });
  m.male = std::move(branches[0]);
  m.female = std::move(branches[1]);
  return m;
}

IdentityPrediction predict_identity(const PipelineModel& model,
                                    std::span<const double> face_row,
                                    std::span<const double> voice_row) {
  if (face_row.size() != model.feature_spec.face_dim ||
      voice_row.size() != model.feature_spec.voice_dim) {
    throw Error(ErrorCode::kDimensionMismatch,
                "pipeline expects face/voice widths " +
                    std::to_string(model.feature_spec.face_dim) + "/" +
                    std::to_string(model.feature_spec.voice_dim));
  }
  const BranchModel& b = route(model, face_row);
  IdentityPrediction p;
  p.gender = b.gender;
  p.scores = predict_scores_row(b.classifier, fuse(face_row, voice_row, b));
  p.speaker = b.classifier.label_vocab[argmax(p.scores)];
  return p;
}

std::vector<IdentityPrediction> predict_identities(const PipelineModel& model,
                                                   const FeatureMatrix& face,
                                                   const FeatureMatrix& voice) {
  if (face.rows() != voice.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "face and voice row counts differ");
  }
  std::vector<IdentityPrediction> out;
  out.reserve(face.rows());
  for (std::size_t i = 0; i < face.rows(); ++i) {
    out.push_back(predict_identity(model, face.row(i), voice.row(i)));
  }
  return out;
}

void save_pipeline(const PipelineModel& model, const PipelineConfig& cfg,
                   const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  Json j;
  j["format"] = "msrf-pipeline";
  j["version"] = kPipelineFormatVersion;
  j["strategy"] = strategy_name(model.strategy);
  j["genderless"] = model.is_genderless();
  j["seed"] = model.seed;
  j["feature_spec"] = {{"face_dim", model.feature_spec.face_dim},
                       {"voice_dim", model.feature_spec.voice_dim},
                       {"face_tag", model.feature_spec.face_tag},
                       {"voice_tag", model.feature_spec.voice_tag}};
  j["gate_seconds"] = model.gate_seconds;
  j["config"] = to_json(cfg);
  Json branches = Json::array();
  for (const auto* b : {&model.male, &model.female, &model.genderless}) {
    if (!*b) continue;
    branches.push_back(branch_summary(**b));
    save_branch(**b, dir / ("branch-" + (*b)->name()));
  }
  j["branches"] = branches;
  if (model.gate) save_model(*model.gate, dir / "gate");
  write_text(dir / "pipeline.json", j.dump(1) + "\n");
}

PipelineModel load_pipeline(const std::filesystem::path& dir) {
  PipelineModel m;
  try {
    auto j = nlohmann::json::parse(read_text(dir / "pipeline.json"));
    if (j.at("format").get<std::string>() != "msrf-pipeline" ||
        j.at("version").get<int>() != kPipelineFormatVersion) {
      throw Error(ErrorCode::kCorruptFile, "unsupported pipeline format in " + dir.string());
    }
    m.strategy = parse_strategy(j.at("strategy").get<std::string>());
    m.seed = j.at("seed").get<std::uint64_t>();
    const auto& fs = j.at("feature_spec");
    m.feature_spec.face_dim = fs.at("face_dim").get<std::size_t>();
    m.feature_spec.voice_dim = fs.at("voice_dim").get<std::size_t>();
    m.feature_spec.face_tag = fs.at("face_tag").get<std::string>();
    m.feature_spec.voice_tag = fs.at("voice_tag").get<std::string>();
    m.gate_seconds = j.at("gate_seconds").get<double>();
    for (const auto& s : j.at("branches")) {
      const auto name = s.at("name").get<std::string>();
      BranchModel b = load_branch(s, dir / ("branch-" + name));
      if (name == "male") m.male = std::move(b);
      else if (name == "female") m.female = std::move(b);
      else m.genderless = std::move(b);
    }
    if (j.at("genderless").get<bool>()) {
      if (!m.genderless) throw Error(ErrorCode::kCorruptFile, "missing genderless branch");
    } else {
      if (!m.male || !m.female) {
        throw Error(ErrorCode::kCorruptFile, "missing gender branch in " + dir.string());
      }
      m.gate = load_model(dir / "gate");
    }
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kCorruptFile, dir.string() + "/pipeline.json: " + e.what());
  }
  return m;
}

}  // namespace msrf
