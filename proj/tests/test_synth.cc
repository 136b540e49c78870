// msrf/test_synth.cc

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

#include <map>

#include "msrf/audio.h"
#include "msrf/synth.h"
#include "oracles.h"

using namespace msrf;

namespace {

std::vector<double> mean_block(const EmbeddingTable& t, const std::string& speaker,
                               int samples, const std::vector<std::size_t>& cols) {
  std::vector<double> m(cols.size(), 0.0);
  for (int k = 0; k < samples; ++k) {
    auto row = *t.find(speaker + "_" + std::to_string(k));
    for (std::size_t q = 0; q < cols.size(); ++q) m[q] += row[cols[q]] / samples;
  }
  return m;
}

double sqdist(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return s;
}

}  // namespace

TEST_CASE("default corpus shape") {
  SynthCorpus c = make_corpus({}, 1);
  CHECK(c.manifest.size() == 2000);
  CHECK(c.manifest.speaker_count(Gender::kMale) == 20);
  CHECK(c.manifest.speaker_count(Gender::kFemale) == 20);
  CHECK(c.face.dim() == 96);
  CHECK(c.voice.dim() == 96);
  CHECK(c.face.size() == 2000);
  CHECK(c.manifest.fully_assigned());
  CHECK(c.manifest.records()[0].speaker == "spk00");
  CHECK(c.manifest.records()[0].sample_id == "spk00_0");
  CHECK(c.face_informative.size() == 32);
}

TEST_CASE("twin pairs share one modality and differ in the other") {
  SynthConfig cfg;
  SynthCorpus c = make_corpus(cfg, 2);
  REQUIRE(c.face_twins.size() == 10);
  REQUIRE(c.voice_twins.size() == 10);
  for (const auto& [a, b] : c.face_twins) {
    CHECK(c.manifest.gender_of(a) == c.manifest.gender_of(b));
    // Sample means of twins differ only by noise: E|d|^2 = 32 * 2 / 50.
    CHECK(sqdist(mean_block(c.face, a, 50, c.face_informative),
                 mean_block(c.face, b, 50, c.face_informative)) < 5.0);
    CHECK(sqdist(mean_block(c.voice, a, 50, c.voice_informative),
                 mean_block(c.voice, b, 50, c.voice_informative)) > 8.0);
  }
  for (const auto& [a, b] : c.voice_twins) {
    CHECK(sqdist(mean_block(c.voice, a, 50, c.voice_informative),
                 mean_block(c.voice, b, 50, c.voice_informative)) < 5.0);
    CHECK(sqdist(mean_block(c.face, a, 50, c.face_informative),
                 mean_block(c.face, b, 50, c.face_informative)) > 8.0);
  }
  cfg.complementarity = false;
  SynthCorpus plain = make_corpus(cfg, 2);
  CHECK(plain.face_twins.empty());
  CHECK(plain.voice_twins.empty());
}

TEST_CASE("gender block is offset by half the gap on each side") {
  SynthCorpus c = make_corpus({}, 3);
  std::vector<std::size_t> gcols{0, 1, 2, 3, 4, 5, 6, 7};
  auto male = mean_block(c.face, "spk00", 50, gcols);
  auto female = mean_block(c.face, "spk39", 50, gcols);
  for (double v : male) CHECK(v == doctest::Approx(4.0).epsilon(0.15));
  for (double v : female) CHECK(v == doctest::Approx(-4.0).epsilon(0.15));
}

TEST_CASE("same spec and seed give the same corpus") {
  SynthConfig cfg;
  cfg.speakers = 8;
  cfg.samples_per_speaker = 6;
  SynthCorpus a = make_corpus(cfg, 5), b = make_corpus(cfg, 5), c = make_corpus(cfg, 6);
  CHECK(encode_embeddings(a.face) == encode_embeddings(b.face));
  CHECK(encode_embeddings(a.voice) == encode_embeddings(b.voice));
  CHECK(encode_embeddings(a.face) != encode_embeddings(c.face));
  for (std::size_t i = 0; i < a.manifest.size(); ++i) {
    CHECK(a.manifest.records()[i].split == b.manifest.records()[i].split);
  }
}

TEST_CASE("extra noise fraction widens each modality") {
  SynthConfig cfg;
  cfg.speakers = 4;
  cfg.samples_per_speaker = 3;
  cfg.extra_noise_fraction = 0.75;
  SynthCorpus c = make_corpus(cfg, 1);
  CHECK(c.face.dim() == 384);
  CHECK(c.voice.dim() == 384);
  cfg.extra_noise_fraction = 1.0;
  CHECK_THROWS_AS(make_corpus(cfg, 1), Error);
}

TEST_CASE("invalid specs are config errors") {
  SynthConfig cfg;
  cfg.speakers = 2;
  try {
    make_corpus(cfg, 1);
    FAIL("accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kConfigError);
  }
  cfg = {};
  cfg.informative_dims = 200;
  CHECK_THROWS_AS(make_corpus(cfg, 1), Error);
}

TEST_CASE("write_corpus produces loadable files, with media on request") {
  auto dir = oracle::scratch_dir("synth");
  SynthConfig cfg;
  cfg.speakers = 4;
  cfg.samples_per_speaker = 3;
  cfg.media = true;
  SynthCorpus c = make_corpus(cfg, 4);
  write_corpus(c, cfg, 4, dir);
  Manifest m = load_manifest(dir / "manifest.csv");
  CHECK(m.size() == 12);
  EmbeddingTable face = load_embeddings(dir / "face.msrf");
  CHECK(face.dim() == 96);
  CHECK(align(face, m).rows() == 12);
  const auto& r = m.records()[0];
  AudioClip clip = load_wav(dir / r.audio_path, 16000);
  CHECK(clip.samples.size() == 64000);
  FeatureMatrix img = read_pgm(dir / r.face_path);
  CHECK(img.rows() == 16);
  std::filesystem::remove_all(dir);
}

TEST_CASE("planted data layout") {
  PlantedData d = make_planted(40, 30, 6, 4, 2.0, 9);
  CHECK(d.x.rows() == 40);
  CHECK(d.x.cols() == 30);
  CHECK(d.informative.size() == 6);
  CHECK(std::is_sorted(d.informative.begin(), d.informative.end()));
  CHECK(d.y[0] == "c0");
  CHECK(d.y[5] == "c1");
  std::map<std::string, int> count;
  for (const auto& y : d.y) count[y]++;
  for (const auto& [k, v] : count) CHECK(v == 10);
}
