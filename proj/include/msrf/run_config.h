// msrf/run_config.h

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

// Declarative run configuration read from JSON. Every field has a default;
// unknown keys are rejected. The resolved configuration (after command-line
// overrides) is written next to every command's outputs.
//
//   {
//     "seed": 7, "workers": 1, "embedding_dim": 4096,
//     "front_end": {...}, "splits": {"train": .7, "val": .15, "test": .15},
//     "pipeline": {"strategy": "pre-post-fs", "genderless": false,
//                  "face_fs": {...}, "voice_fs": {...}, "fused_fs": {...},
//                  "classifier": {...}, "gate": {...}},
//     "ablation": {"extractors": [...], "classifiers": [...],
//                  "fs": [false, true], "populations": ["male", "female"],
//                  "feature_selection": {...}},
//     "synth": {...}
//   }

#ifndef MSRF_RUN_CONFIG_H_
#define MSRF_RUN_CONFIG_H_

#include <cstdint>
#include <filesystem>
#include <string>

#include "msrf/config_json.h"
#include "msrf/evaluation.h"
#include "msrf/synth.h"

namespace msrf {

struct RunConfig {
  std::uint64_t seed = 7;
  int workers = 1;
  std::size_t embedding_dim = 4096;
  FrontEndConfig front_end;
  SplitRatios splits;
  PipelineConfig pipeline;
  GridSpec ablation = GridSpec::table(
      {std::begin(kAllExtractors), std::end(kAllExtractors)});
  FsConfig ablation_fs;
  SynthConfig synth;
};

RunConfig parse_run_config(const std::string& text);
RunConfig load_run_config(const std::filesystem::path& path);
Json to_json(const RunConfig& cfg);

}  // namespace msrf

#endif  // MSRF_RUN_CONFIG_H_
