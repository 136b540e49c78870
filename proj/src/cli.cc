// msrf/cli.cc

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

#include "msrf/cli.h"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "msrf/audio.h"
#include "msrf/embedding_store.h"
#include "msrf/evaluation.h"
#include "msrf/manifest.h"
#include "msrf/pipeline.h"
#include "msrf/run_config.h"
#include "msrf/synth.h"

namespace msrf {

namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------------------
// Small I/O helpers

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorCode::kIoError, "write failed for " + path.string());
}

void write_json(const fs::path& path, const Json& j) {
  write_text(path, j.dump(2) + "\n");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void make_dir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw Error(ErrorCode::kIoError, "cannot create " + dir.string() + ": " + ec.message());
}

fs::path resolve_near(const fs::path& base_file, const std::string& p) {
  fs::path q(p);
  if (q.is_absolute()) return q;
  return base_file.parent_path() / q;
}

enum class SplitSel { kTrain, kVal, kTest, kAll };

SplitSel parse_split_sel(const std::string& s) {
  if (s == "train") return SplitSel::kTrain;
  if (s == "val") return SplitSel::kVal;
  if (s == "test") return SplitSel::kTest;
  if (s == "all") return SplitSel::kAll;
  throw Error(ErrorCode::kConfigError, "unknown split '" + s + "' (train|val|test|all)");
}

std::vector<std::size_t> select_rows(const Manifest& m, SplitSel s) {
  switch (s) {
    case SplitSel::kTrain: return m.indices(Split::kTrain);
    case SplitSel::kVal: return m.indices(Split::kVal);
    case SplitSel::kTest: return m.indices(Split::kTest);
    case SplitSel::kAll: break;
  }
  std::vector<std::size_t> all(m.size());
  for (std::size_t i = 0; i < all.size(); ++i) all[i] = i;
  return all;
}

Manifest load_split_manifest(const fs::path& path) {
  Manifest m = load_manifest(path);
  if (!m.fully_assigned()) {
    throw Error(ErrorCode::kPrecondition,
                path.string() + " has unassigned splits; run validate-manifest --assign-splits");
  }
  return m;
}

FeatureMatrix load_aligned(const fs::path& path, const Manifest& m) {
  EmbeddingTable t = load_embeddings(path);
  FeatureMatrix x = align(t, m);
  x.set_tag(t.source_tag());
  return x;
}

// ---------------------------------------------------------------------------
// Options shared by every subcommand

struct Common {
  std::string config;
  std::uint64_t seed = 0;
  int workers = 1;
  CLI::Option* seed_opt = nullptr;
  CLI::Option* workers_opt = nullptr;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "JSON run configuration");
  c.seed_opt = sub->add_option("--seed", c.seed, "master seed");
  c.workers_opt = sub->add_option("--workers", c.workers, "worker threads")
                      ->check(CLI::PositiveNumber);
}

RunConfig resolve(const Common& c) {
  RunConfig cfg = c.config.empty() ? RunConfig{} : load_run_config(c.config);
  if (c.seed_opt && c.seed_opt->count()) cfg.seed = c.seed;
  if (c.workers_opt && c.workers_opt->count()) cfg.workers = c.workers;
  return cfg;
}

void finalize(RunConfig& cfg) {
  cfg.pipeline.workers = cfg.workers;
}

void echo_config(const fs::path& dir, const RunConfig& cfg) {
  write_json(dir / "config.json", to_json(cfg));
}

// ---------------------------------------------------------------------------
// synth

struct SynthOpts {
  std::string out;
  int speakers = 0;
  int samples = 0;
  double extra_noise = 0.0;
  std::size_t face_dim = 0;
  std::size_t voice_dim = 0;
  bool no_complementarity = false;
  bool media = false;
  CLI::Option *speakers_opt, *samples_opt, *noise_opt, *face_opt, *voice_opt;
};

int cmd_synth(const Common& c, const SynthOpts& o, std::ostream& out) {
  RunConfig cfg = resolve(c);
  SynthConfig& s = cfg.synth;
  if (o.speakers_opt->count()) s.speakers = o.speakers;
  if (o.samples_opt->count()) s.samples_per_speaker = o.samples;
  if (o.noise_opt->count()) s.extra_noise_fraction = o.extra_noise;
  if (o.face_opt->count()) s.face_dim = o.face_dim;
  if (o.voice_opt->count()) s.voice_dim = o.voice_dim;
  if (o.no_complementarity) s.complementarity = false;
  if (o.media) s.media = true;
  if (s.extra_noise_fraction < 0.0 || s.extra_noise_fraction >= 1.0) {
    throw Error(ErrorCode::kConfigError, "extra noise fraction must be in [0, 1)");
  }
  finalize(cfg);
  make_dir(o.out);
  SynthCorpus corpus = make_corpus(s, cfg.seed);
  write_corpus(corpus, s, cfg.seed, o.out);
  echo_config(o.out, cfg);
  out << "wrote " << corpus.manifest.size() << " samples, "
      << corpus.manifest.speaker_vocab().size() << " speakers, face dim "
      << corpus.face.dim() << ", voice dim " << corpus.voice.dim() << " to " << o.out
      << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// validate-manifest

struct ValidateOpts {
  std::string manifest;
  std::string assign_out;
};

int cmd_validate(const Common& c, const ValidateOpts& o, std::ostream& out) {
  RunConfig cfg = resolve(c);
  Manifest m = load_manifest(o.manifest);
  out << "samples " << m.size() << "\n"
      << "speakers " << m.speaker_vocab().size() << " (male "
      << m.speaker_count(Gender::kMale) << ", female "
      << m.speaker_count(Gender::kFemale) << ")\n";
  if (m.any_assigned()) {
    out << "train " << m.indices(Split::kTrain).size() << ", val "
        << m.indices(Split::kVal).size() << ", test " << m.indices(Split::kTest).size()
        << ", unassigned " << m.indices(Split::kUnassigned).size() << "\n";
  } else {
    out << "splits unassigned\n";
  }
  if (!o.assign_out.empty()) {
    Manifest a = assign_splits(m, cfg.splits, cfg.seed);
    a.save(o.assign_out);
    out << "assigned splits written to " << o.assign_out << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// extract

enum class Kind { kMfcc, kDmfcc, kFbank, kSpectrogram, kWaveform };

Kind parse_kind(const std::string& s) {
  if (s == "mfcc") return Kind::kMfcc;
  if (s == "dmfcc") return Kind::kDmfcc;
  if (s == "fbank") return Kind::kFbank;
  if (s == "spectrogram") return Kind::kSpectrogram;
  if (s == "waveform") return Kind::kWaveform;
  throw Error(ErrorCode::kConfigError,
              "unknown feature kind '" + s + "' (mfcc|dmfcc|fbank|spectrogram|waveform)");
}

const char* kind_key(Kind k) {
  switch (k) {
    case Kind::kMfcc: return "mfcc";
    case Kind::kDmfcc: return "dmfcc";
    case Kind::kFbank: return "fbank";
    case Kind::kSpectrogram: return "spectrogram";
    case Kind::kWaveform: return "waveform";
  }
  return "?";
}

std::vector<double> extract_kind(Kind k, const AudioClip& clip, const FrontEndConfig& fe) {
  switch (k) {
    case Kind::kMfcc: return mfcc_features(clip, fe);
    case Kind::kDmfcc: return dmfcc_features(clip, fe);
    case Kind::kFbank: return fbank_features(clip, fe);
    case Kind::kSpectrogram: return spectrogram_image(clip, fe).values.data();
    case Kind::kWaveform:
      return waveform_raster(clip, fe.raster_width, fe.raster_height).data();
  }
  return {};
}

struct ExtractOpts {
  std::string manifest;
  std::string out;
  std::vector<std::string> kinds;
};

int cmd_extract(const Common& c, const ExtractOpts& o, std::ostream& out,
                std::ostream& err) {
  RunConfig cfg = resolve(c);
  finalize(cfg);
  std::vector<Kind> kinds;
  for (const auto& k : o.kinds) {
    Kind kk = parse_kind(k);
    if (std::find(kinds.begin(), kinds.end(), kk) == kinds.end()) kinds.push_back(kk);
  }
  if (kinds.empty()) throw Error(ErrorCode::kConfigError, "no feature kinds requested");
  const fs::path mpath(o.manifest);
  Manifest m = load_manifest(mpath);
  const auto& recs = m.records();
  const std::size_t n = recs.size();
  std::vector<std::vector<std::vector<double>>> rows(kinds.size(),
                                                     std::vector<std::vector<double>>(n));
  std::vector<std::string> errors(n);
  parallel_for(n, cfg.workers, [&](std::size_t i) {
    try {
      if (recs[i].audio_path.empty()) throw Error(ErrorCode::kIoError, "no audio path");
      AudioClip clip = load_wav(resolve_near(mpath, recs[i].audio_path),
                                cfg.front_end.sample_rate, cfg.front_end.clip_seconds);
      for (std::size_t k = 0; k < kinds.size(); ++k) {
        rows[k][i] = extract_kind(kinds[k], clip, cfg.front_end);
      }
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  std::size_t failed = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (errors[i].empty()) continue;
    ++failed;
    err << "sample " << recs[i].sample_id << ": " << errors[i] << "\n";
  }
  if (failed > 0) {
    err << failed << " of " << n << " samples failed; no feature files written\n";
    return kExitData;
  }
  make_dir(o.out);
  std::vector<std::string> ids;
  for (const auto& r : recs) ids.push_back(r.sample_id);
  for (std::size_t k = 0; k < kinds.size(); ++k) {
    const std::size_t dim = n ? rows[k][0].size() : 0;
    EmbeddingTable t(dim, kind_key(kinds[k]));
    for (std::size_t i = 0; i < n; ++i) t.add(ids[i], rows[k][i]);
    write_embeddings(fs::path(o.out) / (std::string(kind_key(kinds[k])) + ".msrf"), t);
    out << kind_key(kinds[k]) << ": " << n << " x " << dim << "\n";
  }
  echo_config(o.out, cfg);
  return kExitOk;
}

// ---------------------------------------------------------------------------
// embed-stub

struct EmbedOpts {
  std::string manifest;
  std::string out;
  std::size_t dim = 0;
  CLI::Option* dim_opt = nullptr;
};

int cmd_embed_stub(const Common& c, const EmbedOpts& o, std::ostream& out,
                   std::ostream& err) {
  RunConfig cfg = resolve(c);
  if (o.dim_opt->count()) cfg.embedding_dim = o.dim;
  finalize(cfg);
  const fs::path mpath(o.manifest);
  Manifest m = load_manifest(mpath);
  const auto& recs = m.records();
  const std::uint64_t proj_seed = derive_seed(cfg.seed, "embed-stub");
  std::vector<std::vector<double>> rows(recs.size());
  std::vector<std::string> errors(recs.size());
  parallel_for(recs.size(), cfg.workers, [&](std::size_t i) {
    try {
      if (recs[i].face_path.empty()) throw Error(ErrorCode::kIoError, "no face path");
      FeatureMatrix img = read_pgm(resolve_near(mpath, recs[i].face_path));
      rows[i] = stub_embed(img, cfg.embedding_dim, proj_seed);
    } catch (const std::exception& e) {
      errors[i] = e.what();
    }
  });
  std::size_t failed = 0;
  for (std::size_t i = 0; i < recs.size(); ++i) {
    if (errors[i].empty()) continue;
    ++failed;
    err << "sample " << recs[i].sample_id << ": " << errors[i] << "\n";
  }
  if (failed > 0) {
    err << failed << " of " << recs.size() << " samples failed; nothing written\n";
    return kExitData;
  }
  make_dir(o.out);
  EmbeddingTable t(cfg.embedding_dim, "face");
  for (std::size_t i = 0; i < recs.size(); ++i) t.add(recs[i].sample_id, rows[i]);
  write_embeddings(fs::path(o.out) / "face.msrf", t);
  echo_config(o.out, cfg);
  out << "face: " << recs.size() << " x " << cfg.embedding_dim << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// convert-embeddings

struct ConvertOpts {
  std::string in;
  std::string out;
  std::string precision = "f32";
};

int cmd_convert(const ConvertOpts& o, std::ostream& out) {
  Precision prec;
  if (o.precision == "f32") {
    prec = Precision::kF32;
  } else if (o.precision == "f64") {
    prec = Precision::kF64;
  } else {
    throw Error(ErrorCode::kConfigError, "precision must be f32 or f64");
  }
  const fs::path in(o.in), dst(o.out);
  const bool in_csv = in.extension() == ".csv";
  const bool out_csv = dst.extension() == ".csv";
  EmbeddingTable t = in_csv ? embeddings_from_csv(read_text(in), in.stem().string())
                            : load_embeddings(in);
  if (out_csv) {
    write_text(dst, embeddings_to_csv(t));
  } else {
    write_embeddings(dst, t, prec);
  }
  out << t.size() << " x " << t.dim() << " -> " << o.out << "\n";
  return kExitOk;
}

// ---------------------------------------------------------------------------
// train / predict / evaluate

struct ModelOverrides {
  std::string strategy;
  std::string classifier;
  bool genderless = false;
};

void apply_overrides(RunConfig& cfg, const ModelOverrides& o) {
  if (!o.strategy.empty()) cfg.pipeline.strategy = parse_strategy(o.strategy);
  if (!o.classifier.empty()) cfg.pipeline.classifier.family = parse_family(o.classifier);
  if (o.genderless) cfg.pipeline.genderless = true;
}

struct TrainOpts {
  std::string manifest, face, voice, out;
  ModelOverrides model;
};

Json branch_log(const BranchModel& b, std::uint64_t seed) {
  Json j;
  j["name"] = b.name();
  j["seed"] = seed;
  j["rows"] = b.classifier.meta.n_samples;
  j["classes"] = b.classifier.label_vocab.size();
  j["face_dim"] = b.face_dim;
  j["voice_dim"] = b.voice_dim;
  j["face_selected"] = b.face_mask ? b.face_mask->output_dim() : b.face_dim;
  j["voice_selected"] = b.voice_mask ? b.voice_mask->output_dim() : b.voice_dim;
  j["concat_width"] = b.concat_width();
  j["fused_width"] = b.fused_width();
  j["fs_seconds"] = b.fs_seconds;
  j["classifier_seconds"] = b.classifier.meta.fit_seconds;
  j["step3_seconds"] = b.step3_seconds;
  return j;
}

int cmd_train(const Common& c, const TrainOpts& o, std::ostream& out) {
  RunConfig cfg = resolve(c);
  apply_overrides(cfg, o.model);
  finalize(cfg);
  Manifest m = load_split_manifest(o.manifest);
  FeatureMatrix face = load_aligned(o.face, m);
  FeatureMatrix voice = load_aligned(o.voice, m);
  Stopwatch sw;
  PipelineModel model = train_full(m, face, voice, cfg.pipeline, cfg.seed);
  const double total = sw.seconds();
  make_dir(o.out);
  save_pipeline(model, cfg.pipeline, o.out);
  echo_config(o.out, cfg);

  Json log;
  log["seed"] = cfg.seed;
  log["workers"] = cfg.workers;
  log["strategy"] = strategy_name(cfg.pipeline.strategy);
  log["genderless"] = model.is_genderless();
  log["train_rows"] = m.indices(Split::kTrain).size();
  if (model.gate) {
    Json g;
    g["seed"] = derive_seed(cfg.seed, {10});
    g["input_dim"] = model.gate->input_dim;
    g["seconds"] = model.gate_seconds;
    log["gate"] = g;
  }
  Json branches = Json::array();
  if (model.male) branches.push_back(branch_log(*model.male, derive_seed(cfg.seed, {20})));
  if (model.female) {
    branches.push_back(branch_log(*model.female, derive_seed(cfg.seed, {21})));
  }
  if (model.genderless) {
    branches.push_back(branch_log(*model.genderless, derive_seed(cfg.seed, {30})));
  }
  log["branches"] = branches;
  log["total_seconds"] = total;
  write_json(fs::path(o.out) / "run_log.json", log);

  out << "trained " << (model.is_genderless() ? "genderless" : "gated") << " "
      << strategy_name(model.strategy) << " pipeline in " << o.out << "\n";
  for (const auto& b : branches) {
    out << "  " << b["name"].get<std::string>() << ": " << b["classes"].get<std::size_t>()
        << " speakers, width " << b["fused_width"].get<std::size_t>() << "\n";
  }
  return kExitOk;
}

struct PredictOpts {
  std::string model, manifest, face, voice, out;
  std::string split = "all";
};

int cmd_predict(const Common& c, const PredictOpts& o, std::ostream& out) {
  RunConfig cfg = resolve(c);
  finalize(cfg);
  PipelineModel model = load_pipeline(o.model);
  Manifest m = load_manifest(o.manifest);
  const auto rows = select_rows(m, parse_split_sel(o.split));
  FeatureMatrix face = load_aligned(o.face, m).select_rows(rows);
  FeatureMatrix voice = load_aligned(o.voice, m).select_rows(rows);
  auto preds = predict_identities(model, face, voice);
  std::ostringstream csv;
  csv << "sample_id,predicted_speaker,routed_gender\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    csv << m.records()[rows[i]].sample_id << ',' << preds[i].speaker << ','
        << (preds[i].gender ? gender_name(*preds[i].gender) : "") << "\n";
  }
  make_dir(o.out);
  write_text(fs::path(o.out) / "predictions.csv", csv.str());
  echo_config(o.out, cfg);
  out << preds.size() << " predictions written to "
      << (fs::path(o.out) / "predictions.csv").string() << "\n";
  return kExitOk;
}

struct EvaluateOpts {
  std::string model, manifest, face, voice, out;
  std::string split = "test";
};

int cmd_evaluate(const Common& c, const EvaluateOpts& o, std::ostream& out) {
  RunConfig cfg = resolve(c);
  finalize(cfg);
  PipelineModel model = load_pipeline(o.model);
  Manifest m = load_manifest(o.manifest);
  const auto rows = select_rows(m, parse_split_sel(o.split));
  if (rows.empty()) throw Error(ErrorCode::kPrecondition, "no rows in split " + o.split);
  FeatureMatrix face = load_aligned(o.face, m).select_rows(rows);
  FeatureMatrix voice = load_aligned(o.voice, m).select_rows(rows);
  std::vector<std::string> speakers;
  std::vector<Gender> genders;
  for (auto i : rows) {
    speakers.push_back(m.records()[i].speaker);
    genders.push_back(m.records()[i].gender);
  }
  PipelineEval ev = evaluate_pipeline(model, face, voice, speakers, genders);

  Json rep;
  rep["split"] = o.split;
  rep["strategy"] = strategy_name(model.strategy);
  rep["genderless"] = model.is_genderless();
  rep["seed"] = model.seed;
  rep["identity"] = ev.identity.to_json(false);
  if (ev.gate) rep["gate"] = ev.gate->to_json(false);
  Json timing;
  timing["fit_seconds"] = ev.identity.fit_seconds;
  timing["predict_seconds"] = ev.identity.predict_seconds;

  std::ostringstream txt;
  txt << "identity (" << o.split << ", " << strategy_name(model.strategy)
      << (model.is_genderless() ? ", genderless" : ", gated") << ")\n"
      << ev.identity.to_text();
  if (ev.gate) txt << "\ngate\n" << ev.gate->to_text();

  make_dir(o.out);
  write_json(fs::path(o.out) / "report.json", rep);
  write_text(fs::path(o.out) / "report.txt", txt.str());
  write_json(fs::path(o.out) / "timing.json", timing);
  echo_config(o.out, cfg);
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.4f", ev.identity.accuracy);
  out << "accuracy " << buf << " (" << ev.identity.correct << "/" << ev.identity.n_samples
      << ")\n";
  if (ev.gate) {
    std::snprintf(buf, sizeof buf, "%.4f", ev.gate->accuracy);
    out << "gate accuracy " << buf << "\n";
  }
  return kExitOk;
}

// ---------------------------------------------------------------------------
// ablate / timing

struct AblateOpts {
  std::string manifest, out, face, voice;
  std::vector<std::string> sources;
  std::string table = "grid";
  ModelOverrides model;
};

int cmd_ablate(const Common& c, const AblateOpts& o, std::ostream& out) {
  RunConfig cfg = resolve(c);
  apply_overrides(cfg, o.model);
  finalize(cfg);
  Manifest m = load_split_manifest(o.manifest);
  std::string json_text, text;
  if (o.table == "grid") {
    std::map<Extractor, FeatureMatrix> sources;
    for (const auto& s : o.sources) {
      auto eq = s.find('=');
      if (eq == std::string::npos || eq == 0 || eq + 1 == s.size()) {
        throw Error(ErrorCode::kConfigError, "--source expects kind=path, got '" + s + "'");
      }
      Extractor e = parse_extractor(s.substr(0, eq));
      if (sources.count(e)) {
        throw Error(ErrorCode::kConfigError, "duplicate --source for " + s.substr(0, eq));
      }
      sources.emplace(e, load_aligned(s.substr(eq + 1), m));
    }
    GridSpec spec = cfg.ablation;
    std::vector<Extractor> used;
    for (auto e : spec.extractors) {
      if (sources.count(e)) used.push_back(e);
    }
    if (used.empty()) {
      throw Error(ErrorCode::kConfigError, "no --source matches the configured extractors");
    }
    spec.extractors = used;
    AblationConfig ac;
    ac.fs = cfg.ablation_fs;
    ac.classifier = cfg.pipeline.classifier;
    ac.workers = cfg.workers;
    AblationGrid g = run_ablation(m, sources, spec, ac, cfg.seed);
    json_text = g.to_json(false).dump(2) + "\n";
    text = g.to_text();
  } else if (o.table == "modality" || o.table == "strategy") {
    if (o.face.empty() || o.voice.empty()) {
      throw Error(ErrorCode::kConfigError, "--table " + o.table + " needs --face and --voice");
    }
    FeatureMatrix face = load_aligned(o.face, m);
    FeatureMatrix voice = load_aligned(o.voice, m);
    if (o.table == "modality") {
      ModalityReport r = modality_comparison(m, face, voice, cfg.pipeline, cfg.seed);
      json_text = r.to_json().dump(2) + "\n";
      text = r.to_text();
    } else {
      StrategyReport r = strategy_comparison(m, face, voice, cfg.pipeline, cfg.seed);
      json_text = r.to_json().dump(2) + "\n";
      text = r.to_text();
    }
  } else {
    throw Error(ErrorCode::kConfigError,
                "unknown table '" + o.table + "' (grid|modality|strategy)");
  }
  make_dir(o.out);
  write_text(fs::path(o.out) / "ablation.json", json_text);
  write_text(fs::path(o.out) / "ablation.txt", text);
  echo_config(o.out, cfg);
  out << text;
  return kExitOk;
}

struct TimingOpts {
  std::string manifest, face, voice, out;
  ModelOverrides model;
};

int cmd_timing(const Common& c, const TimingOpts& o, std::ostream& out) {
  RunConfig cfg = resolve(c);
  apply_overrides(cfg, o.model);
  finalize(cfg);
  Manifest m = load_split_manifest(o.manifest);
  FeatureMatrix face = load_aligned(o.face, m);
  FeatureMatrix voice = load_aligned(o.voice, m);
  TimingReport r = timing_comparison(m, face, voice, cfg.pipeline, cfg.seed);
  make_dir(o.out);
  write_json(fs::path(o.out) / "timing.json", r.to_json());
  write_text(fs::path(o.out) / "timing.txt", r.to_text());
  echo_config(o.out, cfg);
  out << r.to_text();
  return kExitOk;
}

void add_model_overrides(CLI::App* sub, ModelOverrides& m, bool with_genderless) {
  sub->add_option("--strategy", m.strategy,
                  "simple-concat | pre-fs | post-fs | pre-post-fs");
  sub->add_option("--classifier", m.classifier, "svm | lr | nb | rf");
  if (with_genderless) sub->add_flag("--genderless", m.genderless, "single branch, no gate");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"msrf: gender-gated face/voice speaker recognition"};
  app.name("msrf");
  app.require_subcommand(1);

  std::map<const CLI::App*, Common> commons;

  SynthOpts so{};
  auto* synth = app.add_subcommand("synth", "generate a synthetic paired corpus");
  add_common(synth, commons[synth]);
  synth->add_option("--out", so.out, "output directory")->required();
  so.speakers_opt = synth->add_option("--speakers", so.speakers, "speaker count (even)");
  so.samples_opt = synth->add_option("--samples", so.samples, "samples per speaker");
  so.noise_opt = synth->add_option("--extra-noise", so.extra_noise,
                                   "fraction of each modality made of added noise columns");
  so.face_opt = synth->add_option("--face-dim", so.face_dim, "face vector width");
  so.voice_opt = synth->add_option("--voice-dim", so.voice_dim, "voice vector width");
  synth->add_flag("--no-complementarity", so.no_complementarity, "disable twin pairs");
  synth->add_flag("--media", so.media, "also write WAV clips and PGM faces");

  ValidateOpts vo;
  auto* validate = app.add_subcommand("validate-manifest", "check a manifest");
  add_common(validate, commons[validate]);
  validate->add_option("--manifest", vo.manifest, "manifest CSV")->required();
  validate->add_option("--assign-splits", vo.assign_out,
                       "write a copy with stratified splits to this path");

  ExtractOpts eo;
  auto* extract = app.add_subcommand("extract", "audio features for every manifest row");
  add_common(extract, commons[extract]);
  extract->add_option("--manifest", eo.manifest, "manifest CSV")->required();
  extract->add_option("--out", eo.out, "output directory")->required();
  extract->add_option("--kinds", eo.kinds, "mfcc,dmfcc,fbank,spectrogram,waveform")
      ->delimiter(',')
      ->required();

  EmbedOpts bo;
  auto* embed = app.add_subcommand("embed-stub", "stand-in face embeddings from PGM images");
  add_common(embed, commons[embed]);
  embed->add_option("--manifest", bo.manifest, "manifest CSV")->required();
  embed->add_option("--out", bo.out, "output directory")->required();
  bo.dim_opt = embed->add_option("--dim", bo.dim, "embedding width");

  ConvertOpts co;
  auto* convert = app.add_subcommand("convert-embeddings", "MSRF <-> CSV by file extension");
  add_common(convert, commons[convert]);
  convert->add_option("--in", co.in, "input .msrf or .csv")->required();
  convert->add_option("--out", co.out, "output .msrf or .csv")->required();
  convert->add_option("--precision", co.precision, "f32 | f64 for MSRF output");

  TrainOpts to;
  auto* train = app.add_subcommand("train", "train the fusion pipeline");
  add_common(train, commons[train]);
  train->add_option("--manifest", to.manifest, "manifest CSV with splits")->required();
  train->add_option("--face", to.face, "face MSRF table")->required();
  train->add_option("--voice", to.voice, "voice MSRF table")->required();
  train->add_option("--out", to.out, "model directory")->required();
  add_model_overrides(train, to.model, true);

  PredictOpts po;
  auto* predict = app.add_subcommand("predict", "predict speakers with a trained pipeline");
  add_common(predict, commons[predict]);
  predict->add_option("--model", po.model, "model directory")->required();
  predict->add_option("--manifest", po.manifest, "manifest CSV")->required();
  predict->add_option("--face", po.face, "face MSRF table")->required();
  predict->add_option("--voice", po.voice, "voice MSRF table")->required();
  predict->add_option("--out", po.out, "output directory")->required();
  predict->add_option("--split", po.split, "train | val | test | all");

  EvaluateOpts vo2;
  auto* evaluate = app.add_subcommand("evaluate", "score a trained pipeline");
  add_common(evaluate, commons[evaluate]);
  evaluate->add_option("--model", vo2.model, "model directory")->required();
  evaluate->add_option("--manifest", vo2.manifest, "manifest CSV")->required();
  evaluate->add_option("--face", vo2.face, "face MSRF table")->required();
  evaluate->add_option("--voice", vo2.voice, "voice MSRF table")->required();
  evaluate->add_option("--out", vo2.out, "report directory")->required();
  evaluate->add_option("--split", vo2.split, "train | val | test | all");

  AblateOpts ao;
  auto* ablate = app.add_subcommand("ablate", "ablation tables");
  add_common(ablate, commons[ablate]);
  ablate->add_option("--manifest", ao.manifest, "manifest CSV with splits")->required();
  ablate->add_option("--out", ao.out, "report directory")->required();
  ablate->add_option("--source", ao.sources, "extractor=path (repeatable)");
  ablate->add_option("--face", ao.face, "face table (modality/strategy)");
  ablate->add_option("--voice", ao.voice, "voice table (modality/strategy)");
  ablate->add_option("--table", ao.table, "grid | modality | strategy");
  add_model_overrides(ablate, ao.model, false);

  TimingOpts tio;
  auto* timing = app.add_subcommand("timing", "per-branch training time by strategy");
  add_common(timing, commons[timing]);
  timing->add_option("--manifest", tio.manifest, "manifest CSV with splits")->required();
  timing->add_option("--face", tio.face, "face MSRF table")->required();
  timing->add_option("--voice", tio.voice, "voice MSRF table")->required();
  timing->add_option("--out", tio.out, "report directory")->required();
  add_model_overrides(timing, tio.model, false);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (synth->parsed()) return cmd_synth(commons[synth], so, out);
    if (validate->parsed()) return cmd_validate(commons[validate], vo, out);
    if (extract->parsed()) return cmd_extract(commons[extract], eo, out, err);
    if (embed->parsed()) return cmd_embed_stub(commons[embed], bo, out, err);
    if (convert->parsed()) return cmd_convert(co, out);
    if (train->parsed()) return cmd_train(commons[train], to, out);
    if (predict->parsed()) return cmd_predict(commons[predict], po, out);
    if (evaluate->parsed()) return cmd_evaluate(commons[evaluate], vo2, out);
    if (ablate->parsed()) return cmd_ablate(commons[ablate], ao, out);
    if (timing->parsed()) return cmd_timing(commons[timing], tio, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return e.code() == ErrorCode::kConfigError ? kExitConfig : kExitData;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitData;
  }
  return kExitConfig;
}

int run_cli(int argc, char** argv) {
  std::vector<std::string> args;
  for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
  return run_cli(args, std::cout, std::cerr);
}

}  // namespace msrf
