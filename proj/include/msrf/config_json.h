// msrf/config_json.h

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

// JSON conversion for the per-module configuration records. Readers are
// strict: unknown keys and wrongly typed values raise ConfigError naming the
// offending path; absent keys keep their defaults.

#ifndef MSRF_CONFIG_JSON_H_
#define MSRF_CONFIG_JSON_H_

#include <set>
#include <string>

#include "json.hpp"
#include "msrf/audio.h"
#include "msrf/classifiers.h"
#include "msrf/common.h"
#include "msrf/feature_selection.h"
#include "msrf/manifest.h"
#include "msrf/pipeline.h"
#include "msrf/synth.h"

namespace msrf {

using Json = nlohmann::ordered_json;

/// Reads fields out of one JSON object and rejects keys nobody asked for.
class StrictObject {
 public:
  StrictObject(const nlohmann::json& j, std::string where);

  template <typename T>
  void get(const char* key, T& out) {
    auto it = j_.find(key);
    if (it == j_.end()) return;
    seen_.insert(key);
    try {
      out = it->template get<T>();
    } catch (const nlohmann::json::exception&) {
      throw Error(ErrorCode::kConfigError,
                  "wrong type for '" + path(key) + "'");
    }
  }

  /// Sub-object at `key`, or nullptr when absent.
  const nlohmann::json* child(const char* key);
  std::string path(const std::string& key) const;

  /// Throws ConfigError for the first key never read.
  void finish() const;

 private:
  const nlohmann::json& j_;
  std::string where_;
  std::set<std::string> seen_;
};

Json to_json(const FrontEndConfig& cfg);
Json to_json(const L1SvmConfig& cfg);
Json to_json(const FsConfig& cfg);
Json to_json(const ClassifierConfig& cfg);
Json to_json(const SplitRatios& r);
Json to_json(const PipelineConfig& cfg);
Json to_json(const SynthConfig& cfg);

void read_json(const nlohmann::json& j, const std::string& where,
               FrontEndConfig& cfg);
void read_json(const nlohmann::json& j, const std::string& where,
               L1SvmConfig& cfg);
void read_json(const nlohmann::json& j, const std::string& where, FsConfig& cfg);
void read_json(const nlohmann::json& j, const std::string& where,
               ClassifierConfig& cfg);
void read_json(const nlohmann::json& j, const std::string& where,
               SplitRatios& r);
void read_json(const nlohmann::json& j, const std::string& where,
               PipelineConfig& cfg);
void read_json(const nlohmann::json& j, const std::string& where,
               SynthConfig& cfg);

}  // namespace msrf

#endif  // MSRF_CONFIG_JSON_H_
