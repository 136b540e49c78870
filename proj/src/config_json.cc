// msrf/config_json.cc

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

#include "msrf/config_json.h"

#include <cmath>

namespace msrf {

StrictObject::StrictObject(const nlohmann::json& j, std::string where)
    : j_(j), where_(std::move(where)) {
  if (!j_.is_object()) {
    throw Error(ErrorCode::kConfigError,
                "'" + (where_.empty() ? std::string("<root>") : where_) +
                    "' must be an object");
  }
}

std::string StrictObject::path(const std::string& key) const {
  return where_.empty() ? key : where_ + "." + key;
}

const nlohmann::json* StrictObject::child(const char* key) {
  auto it = j_.find(key);
  if (it == j_.end()) return nullptr;
  seen_.insert(key);
  return &*it;
}

void StrictObject::finish() const {
  for (auto it = j_.begin(); it != j_.end(); ++it) {
    if (!seen_.count(it.key())) {
      throw Error(ErrorCode::kConfigError, "unknown key '" + path(it.key()) + "'");
    }
  }
}

Json to_json(const FrontEndConfig& c) {
  Json j;
  j["sample_rate"] = c.sample_rate;
  j["clip_seconds"] = c.clip_seconds;
  j["win_seconds"] = c.win_seconds;
  j["hop_seconds"] = c.hop_seconds;
  j["nfft"] = c.nfft;
  j["num_filters"] = c.num_filters;
  j["num_ceps"] = c.num_ceps;
  j["preemphasis"] = c.preemphasis;
  j["f_low"] = c.f_low;
  j["f_high"] = c.f_high;
  j["delta_window"] = c.delta_window;
  j["raster_width"] = c.raster_width;
  j["raster_height"] = c.raster_height;
  return j;
}

void read_json(const nlohmann::json& j, const std::string& where,
               FrontEndConfig& c) {
  StrictObject o(j, where);
  o.get("sample_rate", c.sample_rate);
  o.get("clip_seconds", c.clip_seconds);
  o.get("win_seconds", c.win_seconds);
  o.get("hop_seconds", c.hop_seconds);
  o.get("nfft", c.nfft);
  o.get("num_filters", c.num_filters);
  o.get("num_ceps", c.num_ceps);
  o.get("preemphasis", c.preemphasis);
  o.get("f_low", c.f_low);
  o.get("f_high", c.f_high);
  o.get("delta_window", c.delta_window);
  o.get("raster_width", c.raster_width);
  o.get("raster_height", c.raster_height);
  o.finish();
  if (c.sample_rate <= 0 || c.clip_seconds <= 0 || c.win_seconds <= 0 ||
      c.hop_seconds <= 0 || c.num_filters <= 0 || c.num_ceps <= 0 ||
      c.num_ceps > c.num_filters || c.delta_window < 1 ||
      c.raster_width <= 0 || c.raster_height <= 0) {
    throw Error(ErrorCode::kConfigError, "invalid value in '" + where + "'");
  }
}

Json to_json(const L1SvmConfig& c) {
  Json j;
  j["lambda"] = c.lambda;
  j["epochs"] = c.epochs;
  j["eta0"] = c.eta0;
  return j;
}

void read_json(const nlohmann::json& j, const std::string& where,
               L1SvmConfig& c) {
  StrictObject o(j, where);
  o.get("lambda", c.lambda);
  o.get("epochs", c.epochs);
  o.get("eta0", c.eta0);
  o.finish();
  if (!(c.lambda >= 0) || c.epochs < 1 || !(c.eta0 > 0)) {
    throw Error(ErrorCode::kConfigError, "invalid value in '" + where + "'");
  }
}

Json to_json(const FsConfig& c) {
  Json j = to_json(c.svm);
  j["policy"] = c.policy.to_string();
  return j;
}

void read_json(const nlohmann::json& j, const std::string& where, FsConfig& c) {
  StrictObject o(j, where);
  o.get("lambda", c.svm.lambda);
  o.get("epochs", c.svm.epochs);
  o.get("eta0", c.svm.eta0);
  std::string policy = c.policy.to_string();
  o.get("policy", policy);
  o.finish();
  c.policy = MaskPolicy::parse(policy);
  if (!(c.svm.lambda >= 0) || c.svm.epochs < 1 || !(c.svm.eta0 > 0)) {
    throw Error(ErrorCode::kConfigError, "invalid value in '" + where + "'");
  }
}

Json to_json(const ClassifierConfig& c) {
  Json j;
  j["family"] = family_name(c.family);
  j["svm"] = {{"l2", c.svm.l2}, {"epochs", c.svm.epochs}, {"eta0", c.svm.eta0}};
  j["logreg"] = {{"l2", c.logreg.l2},
                 {"iterations", c.logreg.iterations},
                 {"step", c.logreg.step}};
  j["nb"] = {{"var_floor", c.nb.var_floor}};
  j["forest"] = {{"trees", c.forest.trees},
                 {"max_depth", c.forest.max_depth},
                 {"min_leaf", c.forest.min_leaf},
                 {"max_features", c.forest.max_features},
                 {"bootstrap", c.forest.bootstrap}};
  return j;
}

void read_json(const nlohmann::json& j, const std::string& where,
               ClassifierConfig& c) {
  StrictObject o(j, where);
  std::string family = family_name(c.family);
  o.get("family", family);
  c.family = parse_family(family);
  if (auto* s = o.child("svm")) {
    StrictObject so(*s, o.path("svm"));
    so.get("l2", c.svm.l2);
    so.get("epochs", c.svm.epochs);
    so.get("eta0", c.svm.eta0);
    so.finish();
  }
  if (auto* s = o.child("logreg")) {
    StrictObject so(*s, o.path("logreg"));
    so.get("l2", c.logreg.l2);
    so.get("iterations", c.logreg.iterations);
    so.get("step", c.logreg.step);
    so.finish();
  }
  if (auto* s = o.child("nb")) {
    StrictObject so(*s, o.path("nb"));
    so.get("var_floor", c.nb.var_floor);
    so.finish();
  }
  if (auto* s = o.child("forest")) {
    StrictObject so(*s, o.path("forest"));
    so.get("trees", c.forest.trees);
    so.get("max_depth", c.forest.max_depth);
    so.get("min_leaf", c.forest.min_leaf);
    so.get("max_features", c.forest.max_features);
    so.get("bootstrap", c.forest.bootstrap);
    so.finish();
  }
  o.finish();
  if (!(c.svm.l2 >= 0) || c.svm.epochs < 1 || !(c.svm.eta0 > 0) ||
      !(c.logreg.l2 >= 0) || c.logreg.iterations < 0 || !(c.logreg.step > 0) ||
      !(c.nb.var_floor > 0) || c.forest.trees < 1 || c.forest.max_depth < 0 ||
      c.forest.min_leaf < 1) {
    throw Error(ErrorCode::kConfigError, "invalid value in '" + where + "'");
  }
}

Json to_json(const SplitRatios& r) {
  Json j;
  j["train"] = r.train;
  j["val"] = r.val;
  j["test"] = r.test;
  return j;
}

void read_json(const nlohmann::json& j, const std::string& where,
               SplitRatios& r) {
  StrictObject o(j, where);
  o.get("train", r.train);
  o.get("val", r.val);
  o.get("test", r.test);
  o.finish();
  if (!(r.train >= 0.0 && r.val >= 0.0 && r.test >= 0.0) ||
      std::abs(r.train + r.val + r.test - 1.0) > 1e-9) {
    throw Error(ErrorCode::kConfigError, "invalid value in '" + where + "': ratios must be non-negative and sum to 1");
  }
}

Json to_json(const PipelineConfig& c) {
  Json j;
  j["strategy"] = strategy_name(c.strategy);
  j["genderless"] = c.genderless;
  j["face_fs"] = to_json(c.face_fs);
  j["voice_fs"] = to_json(c.voice_fs);
  j["fused_fs"] = to_json(c.fused_fs);
  j["classifier"] = to_json(c.classifier);
  j["gate"] = to_json(c.gate);
  return j;
}

void read_json(const nlohmann::json& j, const std::string& where,
               PipelineConfig& c) {
  StrictObject o(j, where);
  std::string strategy = strategy_name(c.strategy);
  o.get("strategy", strategy);
  c.strategy = parse_strategy(strategy);
  o.get("genderless", c.genderless);
  if (auto* s = o.child("face_fs")) read_json(*s, o.path("face_fs"), c.face_fs);
  if (auto* s = o.child("voice_fs")) read_json(*s, o.path("voice_fs"), c.voice_fs);
  if (auto* s = o.child("fused_fs")) read_json(*s, o.path("fused_fs"), c.fused_fs);
  if (auto* s = o.child("classifier")) {
    read_json(*s, o.path("classifier"), c.classifier);
  }
  if (auto* s = o.child("gate")) read_json(*s, o.path("gate"), c.gate);
  o.finish();
}

Json to_json(const SynthConfig& c) {
  Json j;
  j["speakers"] = c.speakers;
  j["samples_per_speaker"] = c.samples_per_speaker;
  j["face_dim"] = c.face_dim;
  j["voice_dim"] = c.voice_dim;
  j["gender_dims"] = c.gender_dims;
  j["informative_dims"] = c.informative_dims;
  j["gender_offset"] = c.gender_offset;
  j["center_scale"] = c.center_scale;
  j["noise"] = c.noise;
  j["complementarity"] = c.complementarity;
  j["extra_noise_fraction"] = c.extra_noise_fraction;
  j["splits"] = to_json(c.splits);
  j["media"] = c.media;
  return j;
}

void read_json(const nlohmann::json& j, const std::string& where,
               SynthConfig& c) {
  StrictObject o(j, where);
  o.get("speakers", c.speakers);
  o.get("samples_per_speaker", c.samples_per_speaker);
  o.get("face_dim", c.face_dim);
  o.get("voice_dim", c.voice_dim);
  o.get("gender_dims", c.gender_dims);
  o.get("informative_dims", c.informative_dims);
  o.get("gender_offset", c.gender_offset);
  o.get("center_scale", c.center_scale);
  o.get("noise", c.noise);
  o.get("complementarity", c.complementarity);
  o.get("extra_noise_fraction", c.extra_noise_fraction);
  if (auto* s = o.child("splits")) read_json(*s, o.path("splits"), c.splits);
  o.get("media", c.media);
  o.finish();
  if (c.speakers < 4 || c.samples_per_speaker < 3 ||
      c.gender_dims + c.informative_dims > std::min(c.face_dim, c.voice_dim) ||
      c.extra_noise_fraction < 0.0 || c.extra_noise_fraction >= 1.0 ||
      !(c.noise > 0.0)) {
    throw Error(ErrorCode::kConfigError, "invalid value in '" + where + "'");
  }
}

}  // namespace msrf
