// msrf/run_config.cc

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

#include "msrf/run_config.h"

#include <fstream>
#include <sstream>

namespace msrf {

namespace {

void read_grid(const nlohmann::json& j, const std::string& where, GridSpec& g,
               FsConfig& fs) {
  StrictObject o(j, where);
  std::vector<std::string> ex, cl, pop;
  o.get("extractors", ex);
  o.get("classifiers", cl);
  o.get("populations", pop);
  o.get("fs", g.fs);
  if (auto* s = o.child("feature_selection")) {
    read_json(*s, o.path("feature_selection"), fs);
  }
  o.finish();
  if (j.contains("extractors")) {
    g.extractors.clear();
    for (const auto& e : ex) g.extractors.push_back(parse_extractor(e));
  }
  if (j.contains("classifiers")) {
    g.classifiers.clear();
    for (const auto& c : cl) g.classifiers.push_back(parse_family(c));
  }
  if (j.contains("populations")) {
    g.populations.clear();
    for (const auto& p : pop) g.populations.push_back(parse_population(p));
  }
}

}  // namespace

RunConfig parse_run_config(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kConfigError, std::string("config is not valid JSON: ") + e.what());
  }
  RunConfig c;
  StrictObject o(j, "");
  o.get("seed", c.seed);
  o.get("workers", c.workers);
  o.get("embedding_dim", c.embedding_dim);
  if (auto* s = o.child("front_end")) read_json(*s, "front_end", c.front_end);
  if (auto* s = o.child("splits")) read_json(*s, "splits", c.splits);
  if (auto* s = o.child("pipeline")) read_json(*s, "pipeline", c.pipeline);
  if (auto* s = o.child("ablation")) read_grid(*s, "ablation", c.ablation, c.ablation_fs);
  if (auto* s = o.child("synth")) read_json(*s, "synth", c.synth);
  o.finish();
  if (c.workers < 1) throw Error(ErrorCode::kConfigError, "workers must be >= 1");
  if (c.embedding_dim < 1) throw Error(ErrorCode::kConfigError, "embedding_dim must be >= 1");
  return c;
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kConfigError, "cannot open config " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_run_config(ss.str());
}

Json to_json(const RunConfig& c) {
  Json j;
  j["seed"] = c.seed;
  j["workers"] = c.workers;
  j["embedding_dim"] = c.embedding_dim;
  j["front_end"] = to_json(c.front_end);
  j["splits"] = to_json(c.splits);
  j["pipeline"] = to_json(c.pipeline);
  Json ab;
  Json ex = Json::array(), cl = Json::array(), pop = Json::array();
  for (auto e : c.ablation.extractors) ex.push_back(extractor_key(e));
  for (auto f : c.ablation.classifiers) cl.push_back(family_short(f));
  for (auto p : c.ablation.populations) pop.push_back(population_key(p));
  ab["extractors"] = ex;
  ab["classifiers"] = cl;
  ab["fs"] = c.ablation.fs;
  ab["populations"] = pop;
  ab["feature_selection"] = to_json(c.ablation_fs);
  j["ablation"] = ab;
  j["synth"] = to_json(c.synth);
  return j;
}

}  // namespace msrf
