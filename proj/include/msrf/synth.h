// msrf/synth.h

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

// Seeded synthetic corpora standing in for paired face/voice data.
//
// Each modality vector is laid out as
//
//   [ gender dims | informative dims | noise dims | extra noise dims ]
//
// Gender dims sit at +offset/2 (Male) or -offset/2 (Female) plus unit noise.
// Informative dims carry a per-speaker center drawn from N(0, center_scale^2)
// plus unit noise. Noise dims are unit noise only. With complementarity on,
// speakers of one gender are grouped in pairs: in "face-twin" pairs both
// speakers share one face center, in "voice-twin" pairs they share one
// voice center, so each modality alone confuses some pairs that the other
// separates.

#ifndef MSRF_SYNTH_H_
#define MSRF_SYNTH_H_

#include <cstdint>
#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "msrf/embedding_store.h"
#include "msrf/manifest.h"
#include "msrf/matrix.h"

namespace msrf {

struct SynthConfig {
  int speakers = 40;  // half Male, half Female
  int samples_per_speaker = 50;
  std::size_t face_dim = 96;
  std::size_t voice_dim = 96;
  std::size_t gender_dims = 8;
  std::size_t informative_dims = 32;  // per modality
  double gender_offset = 8.0;         // distance between gender means, in noise sd
  double center_scale = 0.6;
  double noise = 1.0;
  bool complementarity = true;
  /// Fraction of the final width (per modality) made of appended noise
  /// columns; 0.75 quadruples the width.
  double extra_noise_fraction = 0.0;
  SplitRatios splits;
  /// Also render a WAV clip and a small face image per sample.
  bool media = false;
};

struct SynthCorpus {
  Manifest manifest;
  EmbeddingTable face;
  EmbeddingTable voice;
  std::vector<std::size_t> face_informative;
  std::vector<std::size_t> voice_informative;
  /// Same-gender speaker pairs sharing a face (resp. voice) center.
  std::vector<std::pair<std::string, std::string>> face_twins;
  std::vector<std::pair<std::string, std::string>> voice_twins;
};

/// Pure in (cfg, seed). Speakers are "spk00".."spkNN", samples
/// "<speaker>_<k>"; splits are assigned per speaker with cfg.splits.
SynthCorpus make_corpus(const SynthConfig& cfg, std::uint64_t seed);

/// Writes manifest.csv, face.msrf and voice.msrf (plus audio/ and faces/ when
/// cfg.media is set, referenced by relative manifest paths).
void write_corpus(const SynthCorpus& corpus, const SynthConfig& cfg,
                  std::uint64_t seed, const std::filesystem::path& dir);

/// Appends `extra` unit-noise columns to `x`.
FeatureMatrix append_noise(const FeatureMatrix& x, std::size_t extra,
                           std::uint64_t seed);

/// Classification data with `informative` planted columns out of `dims`:
/// class centers N(0, separation^2) on the planted columns, unit noise on
/// every column, classes assigned round-robin.
struct PlantedData {
  FeatureMatrix x;
  std::vector<std::string> y;
  std::vector<std::size_t> informative;  // sorted
};
PlantedData make_planted(std::size_t samples, std::size_t dims,
                         std::size_t informative, std::size_t classes,
                         double separation, std::uint64_t seed);

}  // namespace msrf

#endif  // MSRF_SYNTH_H_
