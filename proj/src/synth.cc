// msrf/synth.cc

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

#include "msrf/synth.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <numeric>

#include "msrf/audio.h"
#include "msrf/common.h"

namespace msrf {

namespace {

constexpr std::uint64_t kFace = 1, kVoice = 2;

std::string speaker_id(int s) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "spk%02d", s);
  return buf;
}

std::size_t extra_columns(std::size_t base, double fraction) {
  if (fraction <= 0.0) return 0;
  return static_cast<std::size_t>(
      std::llround(static_cast<double>(base) * fraction / (1.0 - fraction)));
}

AudioClip render_voice(int speaker, bool male, int sample, std::uint64_t seed) {
  Rng spk(derive_seed(seed, {static_cast<std::uint64_t>(speaker), 77}));
  const double f0 = male ? 100.0 + 60.0 * spk.uniform() : 180.0 + 80.0 * spk.uniform();
  std::array<double, 5> amp{};
  for (double& a : amp) a = 0.2 + 0.8 * spk.uniform();
  Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(speaker),
                             static_cast<std::uint64_t>(sample), 78}));
  const double jitter = 1.0 + 0.02 * (rng.uniform() - 0.5);
  FrontEndConfig fe;
  AudioClip clip;
  clip.sample_rate = fe.sample_rate;
  clip.samples.resize(fe.clip_samples());
  double norm = std::accumulate(amp.begin(), amp.end(), 0.0);
  for (std::size_t t = 0; t < clip.samples.size(); ++t) {
    const double time = static_cast<double>(t) / fe.sample_rate;
    const double env = 0.6 + 0.4 * std::sin(2.0 * std::numbers::pi * 3.0 * time);
    double v = 0.0;
    for (std::size_t h = 0; h < amp.size(); ++h) {
      v += amp[h] * std::sin(2.0 * std::numbers::pi * f0 * jitter *
                             static_cast<double>(h + 1) * time);
    }
    clip.samples[t] = 0.5 * env * v / norm + 0.02 * rng.normal();
  }
  return clip;
}

FeatureMatrix render_face(std::span<const double> face) {
  FeatureMatrix img(16, 16);
  for (std::size_t p = 0; p < img.data().size(); ++p) {
    img.data()[p] = std::clamp(0.5 + 0.08 * face[p % face.size()], 0.0, 1.0);
  }
  return img;
}

}  // namespace

FeatureMatrix append_noise(const FeatureMatrix& x, std::size_t extra,
                           std::uint64_t seed) {
  FeatureMatrix noise(x.rows(), extra);
  Rng rng(seed);
  for (double& v : noise.data()) v = rng.normal();
  FeatureMatrix out = x.hconcat(noise);
  out.set_tag(x.tag());
  return out;
}

PlantedData make_planted(std::size_t samples, std::size_t dims,
                         std::size_t informative, std::size_t classes,
                         double separation, std::uint64_t seed) {
  if (informative > dims || classes < 2) {
    throw Error(ErrorCode::kPrecondition, "make_planted: bad shape");
  }
  Rng rng(seed);
  std::vector<std::size_t> cols(dims);
  std::iota(cols.begin(), cols.end(), 0);
  rng.shuffle(cols);
  PlantedData out;
  out.informative.assign(cols.begin(), cols.begin() + static_cast<std::ptrdiff_t>(informative));
  std::sort(out.informative.begin(), out.informative.end());
  FeatureMatrix centers(classes, informative);
  for (double& v : centers.data()) v = separation * rng.normal();
  out.x = FeatureMatrix(samples, dims);
  for (std::size_t i = 0; i < samples; ++i) {
    const std::size_t c = i % classes;
    out.y.push_back("c" + std::to_string(c));
    for (std::size_t j = 0; j < dims; ++j) out.x(i, j) = rng.normal();
    for (std::size_t q = 0; q < informative; ++q) {
      out.x(i, out.informative[q]) += centers(c, q);
    }
  }
  return out;
}

SynthCorpus make_corpus(const SynthConfig& cfg, std::uint64_t seed) {
  if (cfg.speakers < 4 || cfg.samples_per_speaker < 3 ||
      cfg.gender_dims + cfg.informative_dims > std::min(cfg.face_dim, cfg.voice_dim) ||
      cfg.extra_noise_fraction < 0.0 || cfg.extra_noise_fraction >= 1.0 ||
      !(cfg.noise > 0.0)) {
    throw Error(ErrorCode::kConfigError, "invalid synthetic corpus spec");
  }
  const int n_spk = cfg.speakers;
  const int n_male = n_spk / 2;
  const std::size_t gd = cfg.gender_dims, inf = cfg.informative_dims;

  // Speaker centers on the informative block.
  Rng centers_rng(derive_seed(seed, "centers"));
  FeatureMatrix face_c(static_cast<std::size_t>(n_spk), inf);
  FeatureMatrix voice_c(static_cast<std::size_t>(n_spk), inf);
  for (double& v : face_c.data()) v = cfg.center_scale * centers_rng.normal();
  for (double& v : voice_c.data()) v = cfg.center_scale * centers_rng.normal();

  SynthCorpus corpus;
  if (cfg.complementarity) {
    for (int g = 0; g < 2; ++g) {
      const int lo = g == 0 ? 0 : n_male, hi = g == 0 ? n_male : n_spk;
      int pair = 0;
      for (int a = lo; a + 1 < hi; a += 2, ++pair) {
        const auto sa = static_cast<std::size_t>(a), sb = sa + 1;
        if (pair % 2 == 0) {
          std::copy(face_c.row(sa).begin(), face_c.row(sa).end(), face_c.row(sb).begin());
          corpus.face_twins.emplace_back(speaker_id(a), speaker_id(a + 1));
        } else {
          std::copy(voice_c.row(sa).begin(), voice_c.row(sa).end(), voice_c.row(sb).begin());
          corpus.voice_twins.emplace_back(speaker_id(a), speaker_id(a + 1));
        }
      }
    }
  }

  const std::size_t face_extra = extra_columns(cfg.face_dim, cfg.extra_noise_fraction);
  const std::size_t voice_extra = extra_columns(cfg.voice_dim, cfg.extra_noise_fraction);
  corpus.face = EmbeddingTable(cfg.face_dim + face_extra, "face");
  corpus.voice = EmbeddingTable(cfg.voice_dim + voice_extra, "voice");
  for (std::size_t q = 0; q < inf; ++q) {
    corpus.face_informative.push_back(gd + q);
    corpus.voice_informative.push_back(gd + q);
  }

  std::vector<SampleRecord> records;
  std::vector<double> row;
  for (int s = 0; s < n_spk; ++s) {
    const bool male = s < n_male;
    const double g = (male ? 0.5 : -0.5) * cfg.gender_offset;
    const std::string spk = speaker_id(s);
    for (int k = 0; k < cfg.samples_per_speaker; ++k) {
      SampleRecord r;
      r.sample_id = spk + "_" + std::to_string(k);
      r.speaker = spk;
      r.gender = male ? Gender::kMale : Gender::kFemale;
      if (cfg.media) {
        r.face_path = "faces/" + r.sample_id + ".pgm";
        r.audio_path = "audio/" + r.sample_id + ".wav";
      }
      for (std::uint64_t modality : {kFace, kVoice}) {
        const bool is_face = modality == kFace;
        const std::size_t dim = is_face ? cfg.face_dim : cfg.voice_dim;
        const std::size_t extra = is_face ? face_extra : voice_extra;
        const FeatureMatrix& centers = is_face ? face_c : voice_c;
        Rng rng(derive_seed(seed, {static_cast<std::uint64_t>(s),
                                   static_cast<std::uint64_t>(k), modality}));
        row.assign(dim + extra, 0.0);
        for (double& v : row) v = cfg.noise * rng.normal();
        for (std::size_t j = 0; j < gd; ++j) row[j] += g;
        for (std::size_t q = 0; q < inf; ++q) {
          row[gd + q] += centers(static_cast<std::size_t>(s), q);
        }
        (is_face ? corpus.face : corpus.voice).add(r.sample_id, row);
      }
      records.push_back(std::move(r));
    }
  }
  corpus.manifest =
      assign_splits(Manifest(std::move(records)), cfg.splits, derive_seed(seed, "splits"));
  return corpus;
}

void write_corpus(const SynthCorpus& corpus, const SynthConfig& cfg,
                  std::uint64_t seed, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  corpus.manifest.save(dir / "manifest.csv");
  write_embeddings(dir / "face.msrf", corpus.face);
  write_embeddings(dir / "voice.msrf", corpus.voice);
  if (!cfg.media) return;
  std::filesystem::create_directories(dir / "audio");
  std::filesystem::create_directories(dir / "faces");
  const auto& vocab = corpus.manifest.speaker_vocab();
  for (const auto& r : corpus.manifest.records()) {
    const int s = static_cast<int>(
        std::lower_bound(vocab.begin(), vocab.end(), r.speaker) - vocab.begin());
    const int k = std::stoi(r.sample_id.substr(r.sample_id.rfind('_') + 1));
    write_wav(dir / r.audio_path,
              render_voice(s, r.gender == Gender::kMale, k, seed));
    write_pgm(dir / r.face_path, render_face(*corpus.face.find(r.sample_id)));
  }
}

}  // namespace msrf
