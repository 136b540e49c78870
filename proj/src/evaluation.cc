// msrf/evaluation.cc

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

#include "msrf/evaluation.h"

#include <algorithm>
#include <array>
#include <cstdio>
#include <sstream>

#include "msrf/common.h"

namespace msrf {

namespace {

using Json = nlohmann::ordered_json;

std::string pct(double fraction_or_percent, bool already_percent = false) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f",
                already_percent ? fraction_or_percent : 100.0 * fraction_or_percent);
  return buf;
}

std::string seconds_str(double s) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.4f", s);
  return buf;
}

// First column left-aligned, the rest right-aligned.
std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const auto& r : rows) {
    for (std::size_t c = 0; c < r.size(); ++c) width[c] = std::max(width[c], r[c].size());
  }
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& r) {
    for (std::size_t c = 0; c < r.size(); ++c) {
      const std::size_t pad = width[c] - r[c].size();
      if (c == 0) {
        out << r[c] << std::string(pad, ' ');
      } else {
        out << "  " << std::string(pad, ' ') << r[c];
      }
    }
    out << '\n';
  };
  line(header);
  std::size_t total = 0;
  for (std::size_t w : width) total += w;
  out << std::string(total + 2 * (width.size() - 1), '-') << '\n';
  for (const auto& r : rows) line(r);
  return out.str();
}

std::vector<std::size_t> rows_where(const Manifest& m, Split split,
                                    std::optional<Gender> g) {
  std::vector<std::size_t> out;
  for (std::size_t i : m.indices(split)) {
    if (!g || m.records()[i].gender == *g) out.push_back(i);
  }
  return out;
}

std::optional<Gender> population_gender(Population p) {
  if (p == Population::kMale) return Gender::kMale;
  if (p == Population::kFemale) return Gender::kFemale;
  return std::nullopt;
}

double accuracy_pct(const std::vector<std::string>& truth,
                    const std::vector<std::string>& pred) {
  return 100.0 * score_predictions(truth, pred).accuracy;
}

constexpr ClassifierFamily kTableFamilies[] = {
    ClassifierFamily::kRandomForest, ClassifierFamily::kGaussianNB,
    ClassifierFamily::kLogReg, ClassifierFamily::kLinearSvm};

}  // namespace

// ---------------------------------------------------------------------------
// EvalReport

EvalReport score_predictions(const std::vector<std::string>& truth,
                             const std::vector<std::string>& predicted) {
  if (truth.size() != predicted.size()) {
    throw Error(ErrorCode::kDimensionMismatch,
                std::to_string(truth.size()) + " truths but " +
                    std::to_string(predicted.size()) + " predictions");
  }
  EvalReport r;
  std::vector<std::string> all(truth);
  all.insert(all.end(), predicted.begin(), predicted.end());
  r.labels = make_vocab(all);
  const std::size_t k = r.labels.size();
  r.confusion.assign(k, std::vector<std::size_t>(k, 0));
  const auto t = encode_labels(truth, r.labels);
  const auto p = encode_labels(predicted, r.labels);
  for (std::size_t i = 0; i < t.size(); ++i) {
    ++r.confusion[t[i]][p[i]];
    if (t[i] == p[i]) ++r.correct;
  }
  r.n_samples = truth.size();
  r.accuracy = r.n_samples ? static_cast<double>(r.correct) / r.n_samples : 0.0;
  for (std::size_t c = 0; c < k; ++c) {
    std::size_t row = 0;
    for (std::size_t v : r.confusion[c]) row += v;
    if (row > 0) {
      r.per_class_accuracy[r.labels[c]] =
          static_cast<double>(r.confusion[c][c]) / static_cast<double>(row);
    }
  }
  return r;
}

Json EvalReport::to_json(bool with_timing) const {
  Json j;
  j["n_samples"] = n_samples;
  j["correct"] = correct;
  j["accuracy"] = accuracy;
  j["labels"] = labels;
  Json per = Json::object();
  for (const auto& [label, acc] : per_class_accuracy) per[label] = acc;
  j["per_class_accuracy"] = per;
  j["confusion"] = confusion;
  if (with_timing) {
    j["wall_clock"] = {{"fit_seconds", fit_seconds},
                       {"predict_seconds", predict_seconds}};
  }
  return j;
}

std::string EvalReport::to_text() const {
  std::ostringstream out;
  out << "accuracy " << pct(accuracy) << "% (" << correct << "/" << n_samples << ")\n";
  std::vector<std::vector<std::string>> rows;
  for (const auto& [label, acc] : per_class_accuracy) {
    const auto c = static_cast<std::size_t>(
        std::lower_bound(labels.begin(), labels.end(), label) - labels.begin());
    std::size_t n = 0;
    for (std::size_t v : confusion[c]) n += v;
    rows.push_back({label, std::to_string(n), pct(acc)});
  }
  out << render_table({"class", "n", "acc%"}, rows);
  return out.str();
}

EvalReport evaluate(const ClassifierModel& model, const FeatureMatrix& x,
                    const std::vector<std::string>& y) {
  Stopwatch sw;
  auto pred = predict(model, x);
  const double t = sw.seconds();
  EvalReport r = score_predictions(y, pred);
  r.fit_seconds = model.meta.fit_seconds;
  r.predict_seconds = t;
  return r;
}

PipelineEval evaluate_pipeline(const PipelineModel& model, const FeatureMatrix& face,
                               const FeatureMatrix& voice,
                               const std::vector<std::string>& speakers,
                               const std::vector<Gender>& genders) {
  Stopwatch sw;
  auto preds = predict_identities(model, face, voice);
  const double t = sw.seconds();
  std::vector<std::string> names;
  for (const auto& p : preds) names.push_back(p.speaker);
  PipelineEval ev;
  ev.identity = score_predictions(speakers, names);
  ev.identity.predict_seconds = t;
  ev.identity.fit_seconds = model.gate_seconds;
  for (const auto* b : {&model.male, &model.female, &model.genderless}) {
    if (*b) ev.identity.fit_seconds += (*b)->step3_seconds;
  }
  if (!model.is_genderless()) {
    if (genders.size() != preds.size()) {
      throw Error(ErrorCode::kDimensionMismatch, "gender labels not aligned");
    }
    std::vector<std::string> truth, routed;
    for (std::size_t i = 0; i < preds.size(); ++i) {
      truth.push_back(gender_name(genders[i]));
      routed.push_back(gender_name(*preds[i].gender));
    }
    ev.gate = score_predictions(truth, routed);
  }
  return ev;
}

// ---------------------------------------------------------------------------
// Ablation grid

const char* extractor_key(Extractor e) {
  switch (e) {
    case Extractor::kSpectrogram: return "spectrogram";
    case Extractor::kWaveform: return "waveform";
    case Extractor::kMfcc: return "mfcc";
    case Extractor::kDmfcc: return "dmfcc";
    case Extractor::kFbank: return "fbank";
    case Extractor::kFace: return "face";
  }
  return "";
}

const char* extractor_label(Extractor e) {
  switch (e) {
    case Extractor::kSpectrogram: return "Spectrogram";
    case Extractor::kWaveform: return "Waveform";
    case Extractor::kMfcc: return "MFCC";
    case Extractor::kDmfcc: return "DMFCC";
    case Extractor::kFbank: return "Filter bank";
    case Extractor::kFace: return "VGG";
  }
  return "";
}

Extractor parse_extractor(const std::string& key) {
  for (auto e : kAllExtractors) {
    if (key == extractor_key(e)) return e;
  }
  throw Error(ErrorCode::kConfigError,
              "unknown extractor '" + key +
                  "' (want spectrogram|waveform|mfcc|dmfcc|fbank|face)");
}

const char* population_key(Population p) {
  switch (p) {
    case Population::kMale: return "male";
    case Population::kFemale: return "female";
    case Population::kAll: return "all";
  }
  return "";
}

const char* population_label(Population p) {
  switch (p) {
    case Population::kMale: return "M";
    case Population::kFemale: return "F";
    case Population::kAll: return "All";
  }
  return "";
}

Population parse_population(const std::string& key) {
  for (auto p : {Population::kMale, Population::kFemale, Population::kAll}) {
    if (key == population_key(p)) return p;
  }
  throw Error(ErrorCode::kConfigError,
              "unknown population '" + key + "' (want male|female|all)");
}

GridSpec GridSpec::table(std::vector<Extractor> extractors) {
  GridSpec g;
  g.extractors = std::move(extractors);
  g.classifiers.assign(std::begin(kTableFamilies), std::end(kTableFamilies));
  g.fs = {false, true};
  g.populations = {Population::kMale, Population::kFemale};
  return g;
}

const AblationCell* AblationGrid::find(const CellCoord& c) const {
  for (const auto& cell : cells) {
    if (cell.coord == c) return &cell;
  }
  return nullptr;
}

Json AblationGrid::to_json(bool with_timing) const {
  Json j;
  Json axes;
  Json ex = Json::array(), cl = Json::array(), fs_axis = Json::array(),
       pop = Json::array();
  for (auto e : spec.extractors) ex.push_back(extractor_key(e));
  for (auto c : spec.classifiers) cl.push_back(family_short(c));
  for (bool f : spec.fs) fs_axis.push_back(f);
  for (auto p : spec.populations) pop.push_back(population_key(p));
  axes["extractor"] = ex;
  axes["classifier"] = cl;
  axes["fs"] = fs_axis;
  axes["population"] = pop;
  j["axes"] = axes;
  Json arr = Json::array();
  for (const auto& c : cells) {
    Json cj;
    cj["extractor"] = extractor_key(c.coord.extractor);
    cj["classifier"] = family_short(c.coord.classifier);
    cj["fs"] = c.coord.fs;
    cj["population"] = population_key(c.coord.population);
    cj["ok"] = c.ok;
    if (c.ok) {
      cj["accuracy"] = c.report.accuracy;
      cj["n_test"] = c.report.n_samples;
      cj["input_dim"] = c.input_dim;
      cj["selected_dim"] = c.selected_dim;
      if (with_timing) cj["fit_seconds"] = c.report.fit_seconds;
    } else {
      cj["error"] = c.error;
    }
    arr.push_back(cj);
  }
  j["cells"] = arr;
  return j;
}

std::string AblationGrid::to_text() const {
  std::vector<ClassifierFamily> cols;
  for (auto f : kTableFamilies) {
    if (std::find(spec.classifiers.begin(), spec.classifiers.end(), f) !=
        spec.classifiers.end()) {
      cols.push_back(f);
    }
  }
  std::vector<std::string> header{"Features (acc %)"};
  for (auto f : cols) header.push_back(family_short(f));
  std::vector<std::vector<std::string>> rows;
  for (auto e : spec.extractors) {
    for (auto p : spec.populations) {
      for (bool fs : spec.fs) {
        std::vector<std::string> r{std::string(extractor_label(e)) + "(" +
                                   population_label(p) + ")" + (fs ? " + FS" : "")};
        for (auto f : cols) {
          const AblationCell* c = find({e, f, fs, p});
          r.push_back(!c ? "-" : c->ok ? pct(c->report.accuracy) : "fail");
        }
        rows.push_back(std::move(r));
      }
    }
  }
  return render_table(header, rows);
}

AblationGrid run_ablation(const Manifest& manifest,
                          const std::map<Extractor, FeatureMatrix>& sources,
                          const GridSpec& spec, const AblationConfig& cfg,
                          std::uint64_t seed) {
  AblationGrid grid;
  grid.spec = spec;
  for (auto e : spec.extractors) {
    for (auto p : spec.populations) {
      for (bool fs : spec.fs) {
        for (auto c : spec.classifiers) {
          AblationCell cell;
          cell.coord = {e, c, fs, p};
          grid.cells.push_back(std::move(cell));
        }
      }
    }
  }
  parallel_for(grid.cells.size(), cfg.workers, [&](std::size_t i) {
    AblationCell& cell = grid.cells[i];
    const CellCoord& cc = cell.coord;
    try {
      auto src = sources.find(cc.extractor);
      if (src == sources.end()) {
        throw Error(ErrorCode::kPrecondition,
                    std::string("no feature source for ") + extractor_key(cc.extractor));
      }
      const FeatureMatrix& x = src->second;
      if (x.rows() != manifest.size()) {
        throw Error(ErrorCode::kDimensionMismatch,
                    std::string(extractor_key(cc.extractor)) +
                        " rows do not match the manifest");
      }
      const std::uint64_t cell_seed = derive_seed(
          seed, {static_cast<std::uint64_t>(cc.extractor),
                 static_cast<std::uint64_t>(cc.classifier),
                 static_cast<std::uint64_t>(cc.fs),
                 static_cast<std::uint64_t>(cc.population)});
      const auto g = population_gender(cc.population);
      const auto tr = rows_where(manifest, Split::kTrain, g);
      const auto te = rows_where(manifest, Split::kTest, g);
      if (te.empty()) throw Error(ErrorCode::kPrecondition, "no test rows");
      FeatureMatrix xtr = x.select_rows(tr), xte = x.select_rows(te);
      const auto ytr = manifest.speakers_at(tr);
      cell.input_dim = x.cols();
      if (cc.fs) {
        auto [mask, reduced] = fit_select(xtr, ytr, cfg.fs, derive_seed(cell_seed, {1}));
        xtr = std::move(reduced);
        xte = transform(xte, mask);
      }
      cell.selected_dim = xtr.cols();
      ClassifierConfig ccfg = cfg.classifier;
      ccfg.family = cc.classifier;
      ccfg.forest.workers = 1;
      auto model = train(xtr, ytr, ccfg, derive_seed(cell_seed, {2}));
      cell.report = evaluate(model, xte, manifest.speakers_at(te));
      cell.ok = true;
    } catch (const std::exception& ex) {
      cell.ok = false;
      cell.error = ex.what();
    }
  });
  return grid;
}

// ---------------------------------------------------------------------------
// Modality comparison

Json ModalityReport::to_json() const {
  Json j;
  j["strategy"] = strategy_name(strategy);
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back({{"population", r.population},
                   {"image", r.image},
                   {"voice", r.voice},
                   {"multimodal", r.multimodal}});
  }
  j["rows"] = arr;
  return j;
}

std::string ModalityReport::to_text() const {
  std::vector<std::vector<std::string>> body;
  for (const auto& r : rows) {
    body.push_back({r.population, pct(r.image, true), pct(r.voice, true),
                    pct(r.multimodal, true)});
  }
  return std::string("Fusion: ") + strategy_label(strategy) + "\n" +
         render_table({"Population (acc %)", "Image", "Voice", "Multimodality"}, body);
}

ModalityReport modality_comparison(const Manifest& manifest, const FeatureMatrix& face,
                                   const FeatureMatrix& voice,
                                   const PipelineConfig& cfg, std::uint64_t seed) {
  if (face.rows() != manifest.size() || voice.rows() != manifest.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "feature rows do not match the manifest");
  }
  ModalityReport rep;
  rep.strategy = cfg.strategy;
  const bool use_fs = cfg.strategy != FusionStrategy::kSimpleConcat;
  struct Pop {
    std::optional<Gender> g;
    const char* name;
    std::uint64_t tag;
  };
  for (const Pop& p : {Pop{Gender::kMale, "Male", 20}, Pop{Gender::kFemale, "Female", 21},
                       Pop{std::nullopt, "Total (Genderless)", 30}}) {
    const auto tr = rows_where(manifest, Split::kTrain, p.g);
    const auto te = rows_where(manifest, Split::kTest, p.g);
    const auto ytr = manifest.speakers_at(tr), yte = manifest.speakers_at(te);
    const std::uint64_t s = derive_seed(seed, {p.tag});

    auto unimodal = [&](const FeatureMatrix& x, const FsConfig& fs, std::uint64_t tag) {
      FeatureMatrix xtr = x.select_rows(tr), xte = x.select_rows(te);
      if (use_fs) {
        auto [mask, reduced] = fit_select(xtr, ytr, fs, derive_seed(s, {tag}));
        xtr = std::move(reduced);
        xte = transform(xte, mask);
      }
      auto model = train(xtr, ytr, cfg.classifier, derive_seed(s, {4}));
      return accuracy_pct(yte, predict(model, xte));
    };

    ModalityRow row;
    row.population = p.name;
    row.image = unimodal(face, cfg.face_fs, 1);
    row.voice = unimodal(voice, cfg.voice_fs, 2);
    std::vector<Gender> genders;
    for (std::size_t i : tr) genders.push_back(manifest.records()[i].gender);
    BranchModel b = train_branch(p.g, face.select_rows(tr), voice.select_rows(tr), ytr,
                                 genders, cfg, s);
    row.multimodal = accuracy_pct(
        yte, predict(b.classifier,
                     fuse_matrix(face.select_rows(te), voice.select_rows(te), b)));
    rep.rows.push_back(row);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Strategy comparison

const StrategyRow& StrategyReport::row(FusionStrategy s) const {
  for (const auto& r : rows) {
    if (r.strategy == s) return r;
  }
  throw Error(ErrorCode::kPrecondition,
              std::string("strategy ") + strategy_name(s) + " not in report");
}

Json StrategyReport::to_json() const {
  Json arr = Json::array();
  for (const auto& r : rows) {
    arr.push_back({{"strategy", strategy_name(r.strategy)},
                   {"male", r.male},
                   {"female", r.female},
                   {"average", r.average},
                   {"pipeline", r.pipeline},
                   {"genderless", r.genderless},
                   {"input_width", r.input_width},
                   {"fused_width", r.fused_width},
                   {"genderless_fused_width", r.genderless_fused_width}});
  }
  Json j;
  j["rows"] = arr;
  return j;
}

std::string StrategyReport::to_text() const {
  std::vector<std::vector<std::string>> body;
  for (const auto& r : rows) {
    body.push_back({strategy_label(r.strategy), pct(r.male, true), pct(r.female, true),
                    pct(r.average, true), pct(r.pipeline, true),
                    pct(r.genderless, true), std::to_string(r.fused_width)});
  }
  return render_table({"Fusion (acc %)", "Male", "Female", "Avg.", "Pipeline",
                       "Total (Genderless)", "Width"},
                      body);
}

StrategyReport strategy_comparison(const Manifest& manifest, const FeatureMatrix& face,
                                   const FeatureMatrix& voice,
                                   const PipelineConfig& cfg, std::uint64_t seed,
                                   const std::vector<FusionStrategy>& strategies) {
  const auto te = manifest.indices(Split::kTest);
  const FeatureMatrix fte = face.select_rows(te), vte = voice.select_rows(te);
  const auto yte = manifest.speakers_at(te);
  StrategyReport rep;
  for (FusionStrategy s : strategies) {
    PipelineConfig c = cfg;
    c.strategy = s;
    c.genderless = false;
    StrategyRow row;
    row.strategy = s;
    row.input_width = face.cols() + voice.cols();

    PipelineModel gated = train_full(manifest, face, voice, c, seed);
    auto preds = predict_identities(gated, fte, vte);
    std::array<std::size_t, 2> ok{0, 0}, n{0, 0};
    std::size_t all_ok = 0;
    for (std::size_t i = 0; i < te.size(); ++i) {
      const auto g = static_cast<std::size_t>(manifest.records()[te[i]].gender);
      const bool hit = preds[i].speaker == yte[i];
      ++n[g];
      ok[g] += hit;
      all_ok += hit;
    }
    auto frac = [](std::size_t a, std::size_t b) {
      return b ? 100.0 * static_cast<double>(a) / static_cast<double>(b) : 0.0;
    };
    row.male = frac(ok[0], n[0]);
    row.female = frac(ok[1], n[1]);
    row.average = 0.5 * (row.male + row.female);
    row.pipeline = frac(all_ok, te.size());
    row.fused_width = std::max(gated.male->fused_width(), gated.female->fused_width());

    c.genderless = true;
    PipelineModel gl = train_full(manifest, face, voice, c, seed);
    std::vector<std::string> names;
    for (const auto& p : predict_identities(gl, fte, vte)) names.push_back(p.speaker);
    row.genderless = accuracy_pct(yte, names);
    row.genderless_fused_width = gl.genderless->fused_width();
    rep.rows.push_back(row);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Timing

const TimingCell& TimingReport::cell(FusionStrategy s, const std::string& pop) const {
  for (const auto& c : cells) {
    if (c.strategy == s && c.population == pop) return c;
  }
  throw Error(ErrorCode::kPrecondition, "timing cell not found");
}

double TimingReport::ratio(FusionStrategy s) const {
  return (cell(s, "Male").step3_seconds + cell(s, "Female").step3_seconds) /
         cell(s, "Genderless").step3_seconds;
}

Json TimingReport::to_json() const {
  Json arr = Json::array();
  for (const auto& c : cells) {
    arr.push_back({{"strategy", strategy_name(c.strategy)},
                   {"population", c.population},
                   {"rows", c.rows},
                   {"classes", c.classes},
                   {"fused_width", c.fused_width},
                   {"fs_seconds", c.fs_seconds},
                   {"step3_seconds", c.step3_seconds}});
  }
  Json ratios = Json::object();
  std::vector<FusionStrategy> seen;
  for (const auto& c : cells) {
    if (std::find(seen.begin(), seen.end(), c.strategy) == seen.end()) {
      seen.push_back(c.strategy);
      ratios[strategy_name(c.strategy)] = ratio(c.strategy);
    }
  }
  Json j;
  j["cells"] = arr;
  j["ratio_male_plus_female_over_genderless"] = ratios;
  return j;
}

std::string TimingReport::to_text() const {
  std::vector<std::vector<std::string>> body;
  std::vector<FusionStrategy> seen;
  for (const auto& c : cells) {
    if (std::find(seen.begin(), seen.end(), c.strategy) != seen.end()) continue;
    seen.push_back(c.strategy);
    char ratio_buf[32];
    std::snprintf(ratio_buf, sizeof(ratio_buf), "%.3f", ratio(c.strategy));
    body.push_back({strategy_label(c.strategy),
                    seconds_str(cell(c.strategy, "Male").step3_seconds),
                    seconds_str(cell(c.strategy, "Female").step3_seconds),
                    seconds_str(cell(c.strategy, "Genderless").step3_seconds),
                    ratio_buf});
  }
  return render_table({"Fusion (step-3 s)", "Male", "Female", "Genderless",
                       "(M+F)/Genderless"},
                      body);
}

TimingReport timing_comparison(const Manifest& manifest, const FeatureMatrix& face,
                               const FeatureMatrix& voice, const PipelineConfig& cfg,
                               std::uint64_t seed,
                               const std::vector<FusionStrategy>& strategies) {
  if (face.rows() != manifest.size() || voice.rows() != manifest.size()) {
    throw Error(ErrorCode::kDimensionMismatch, "feature rows do not match the manifest");
  }
  if (manifest.speaker_count(Gender::kMale) == 0 ||
      manifest.speaker_count(Gender::kFemale) == 0) {
    throw Error(ErrorCode::kPrecondition, "timing needs both genders");
  }
  TimingReport rep;
  struct Pop {
    std::optional<Gender> g;
    const char* name;
    std::uint64_t tag;
  };
  for (FusionStrategy s : strategies) {
    PipelineConfig c = cfg;
    c.strategy = s;
    for (const Pop& p : {Pop{Gender::kMale, "Male", 20}, Pop{Gender::kFemale, "Female", 21},
                         Pop{std::nullopt, "Genderless", 30}}) {
      const auto tr = rows_where(manifest, Split::kTrain, p.g);
      std::vector<Gender> genders;
      for (std::size_t i : tr) genders.push_back(manifest.records()[i].gender);
      const auto y = manifest.speakers_at(tr);
      BranchModel b = train_branch(p.g, face.select_rows(tr), voice.select_rows(tr), y,
                                   genders, c, derive_seed(seed, {p.tag}));
      TimingCell cell;
      cell.strategy = s;
      cell.population = p.name;
      cell.rows = tr.size();
      cell.classes = b.classifier.num_classes();
      cell.fused_width = b.fused_width();
      cell.fs_seconds = b.fs_seconds;
      cell.step3_seconds = b.step3_seconds;
      rep.cells.push_back(cell);
    }
  }
  return rep;
}

}  // namespace msrf
