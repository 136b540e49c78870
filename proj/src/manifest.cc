// msrf/manifest.cc

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

#include "msrf/manifest.h"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <unordered_set>

namespace msrf {

namespace {

const char* kHeader = "sample_id,face_path,audio_path,speaker,gender,split";

Split parse_split(const std::string& s, std::size_t line) {
  if (s.empty()) return Split::kUnassigned;
  if (s == "train") return Split::kTrain;
  if (s == "val") return Split::kVal;
  if (s == "test") return Split::kTest;
  throw Error(ErrorCode::kParseError, "line " + std::to_string(line) +
                                          ": bad split value '" + s + "'");
}

// Splits one CSV line with RFC 4180 quoting. Embedded newlines inside quotes
// are not supported (manifest fields are paths and labels).
std::vector<std::string> split_csv_line(const std::string& line,
                                        std::size_t line_no) {
  std::vector<std::string> fields;
  std::string cur;
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    char c = line[i];
    if (quoted) {
      if (c == '"') {
        if (i + 1 < line.size() && line[i + 1] == '"') {
          cur.push_back('"');
          ++i;
        } else {
          quoted = false;
        }
      } else {
        cur.push_back(c);
      }
    } else if (c == '"') {
      if (!cur.empty()) {
        throw Error(ErrorCode::kParseError,
                    "line " + std::to_string(line_no) + ": stray quote");
      }
      quoted = true;
    } else if (c == ',') {
      fields.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (quoted) {
    throw Error(ErrorCode::kParseError,
                "line " + std::to_string(line_no) + ": unterminated quote");
  }
  fields.push_back(std::move(cur));
  return fields;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out.push_back('"');
    out.push_back(c);
  }
  out.push_back('"');
  return out;
}

}  // namespace

const char* split_name(Split s) {
  switch (s) {
    case Split::kTrain: return "train";
    case Split::kVal: return "val";
    case Split::kTest: return "test";
    case Split::kUnassigned: return "";
  }
  return "";
}

Manifest::Manifest(std::vector<SampleRecord> records)
    : records_(std::move(records)) {
  std::unordered_set<std::string> ids;
  std::map<std::string, Gender> speaker_gender;
  for (const auto& r : records_) {
    if (!ids.insert(r.sample_id).second) {
      throw Error(ErrorCode::kDuplicateId, "sample id '" + r.sample_id + "'");
    }
    auto [it, inserted] = speaker_gender.emplace(r.speaker, r.gender);
    if (!inserted && it->second != r.gender) {
      throw Error(ErrorCode::kInconsistentGender,
                  "speaker '" + r.speaker + "' labelled both Male and Female");
    }
  }
  for (const auto& [speaker, gender] : speaker_gender) {
    vocab_.push_back(speaker);
    vocab_gender_.push_back(gender);
    ++gender_counts_[static_cast<int>(gender)];
  }
  if (!records_.empty() && fully_assigned()) {
    std::unordered_set<std::string> trained;
    for (const auto& r : records_) {
      if (r.split == Split::kTrain) trained.insert(r.speaker);
    }
    for (const auto& s : vocab_) {
      if (!trained.count(s)) {
        throw Error(ErrorCode::kPrecondition,
                    "speaker '" + s + "' has no train samples");
      }
    }
  }
}

Gender Manifest::gender_of(const std::string& speaker) const {
  auto it = std::lower_bound(vocab_.begin(), vocab_.end(), speaker);
  if (it == vocab_.end() || *it != speaker) {
    throw Error(ErrorCode::kPrecondition, "unknown speaker '" + speaker + "'");
  }
  return vocab_gender_[static_cast<std::size_t>(it - vocab_.begin())];
}

bool Manifest::fully_assigned() const {
  return std::all_of(records_.begin(), records_.end(), [](const auto& r) {
    return r.split != Split::kUnassigned;
  });
}

bool Manifest::any_assigned() const {
  return std::any_of(records_.begin(), records_.end(), [](const auto& r) {
    return r.split != Split::kUnassigned;
  });
}

std::vector<std::size_t> Manifest::indices(Split split) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < records_.size(); ++i) {
    if (records_[i].split == split) out.push_back(i);
  }
  return out;
}

std::vector<std::string> Manifest::speakers_at(
    const std::vector<std::size_t>& idx) const {
  std::vector<std::string> out;
  out.reserve(idx.size());
  for (std::size_t i : idx) out.push_back(records_[i].speaker);
  return out;
}

void Manifest::save(const std::filesystem::path& path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out << kHeader << '\n';
  for (const auto& r : records_) {
    out << csv_field(r.sample_id) << ',' << csv_field(r.face_path) << ','
        << csv_field(r.audio_path) << ',' << csv_field(r.speaker) << ','
        << (r.gender == Gender::kMale ? "m" : "f") << ',' << split_name(r.split)
        << '\n';
  }
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

Manifest parse_manifest(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  std::vector<SampleRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1 && line.rfind("\xEF\xBB\xBF", 0) == 0) line.erase(0, 3);
    if (!header_seen) {
      if (line != kHeader) {
        throw Error(ErrorCode::kParseError,
                    "line 1: expected header '" + std::string(kHeader) + "'");
      }
      header_seen = true;
      continue;
    }
    if (line.empty()) continue;
    auto fields = split_csv_line(line, line_no);
    if (fields.size() != 6) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": expected 6 fields, got " +
                      std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[3].empty()) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) +
                                              ": empty sample_id or speaker");
    }
    SampleRecord r;
    r.sample_id = fields[0];
    r.face_path = fields[1];
    r.audio_path = fields[2];
    r.speaker = fields[3];
    try {
      r.gender = parse_gender(fields[4]);
    } catch (const Error&) {
      throw Error(ErrorCode::kParseError, "line " + std::to_string(line_no) +
                                              ": bad gender '" + fields[4] + "'");
    }
    r.split = parse_split(fields[5], line_no);
    records.push_back(std::move(r));
  }
  if (!header_seen) throw Error(ErrorCode::kParseError, "line 1: empty file");
  return Manifest(std::move(records));
}

Manifest load_manifest(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_manifest(ss.str());
}

Manifest assign_splits(const Manifest& manifest, const SplitRatios& ratios,
                       std::uint64_t seed) {
  const std::array<double, 3> r{ratios.train, ratios.val, ratios.test};
  for (double v : r) {
    if (!(v >= 0.0)) throw Error(ErrorCode::kBadRatios, "negative ratio");
  }
  if (std::abs(r[0] + r[1] + r[2] - 1.0) > 1e-9) {
    throw Error(ErrorCode::kBadRatios, "ratios must sum to 1");
  }
  if (manifest.any_assigned()) {
    throw Error(ErrorCode::kSplitsAssigned,
                "manifest already carries split assignments");
  }

  std::map<std::string, std::vector<std::size_t>> by_speaker;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    by_speaker[manifest.records()[i].speaker].push_back(i);
  }

  auto records = manifest.records();
  constexpr std::array<Split, 3> kSplits{Split::kTrain, Split::kVal,
                                         Split::kTest};
  for (auto& [speaker, idx] : by_speaker) {
    const std::size_t n = idx.size();
    if (n < 3) {
      throw Error(ErrorCode::kPrecondition,
                  "speaker '" + speaker + "' has fewer than 3 samples");
    }
    // Largest-remainder allocation; ties go to the earlier split.
    std::array<std::size_t, 3> count{};
    std::array<double, 3> frac{};
    std::size_t assigned = 0;
    for (int k = 0; k < 3; ++k) {
      double exact = r[k] * static_cast<double>(n);
      count[k] = static_cast<std::size_t>(std::floor(exact + 1e-9));
      frac[k] = exact - static_cast<double>(count[k]);
      assigned += count[k];
    }
    while (assigned < n) {
      int best = 0;
      for (int k = 1; k < 3; ++k) {
        if (frac[k] > frac[best]) best = k;
      }
      ++count[best];
      frac[best] = -1.0;
      ++assigned;
    }
    while (assigned > n) {  // only reachable through the epsilon above
      int big = static_cast<int>(
          std::max_element(count.begin(), count.end()) - count.begin());
      --count[big];
      --assigned;
    }
    // Every split with a positive ratio gets at least one sample.
    for (int k = 0; k < 3; ++k) {
      if (r[k] > 0.0 && count[k] == 0) {
        int big = static_cast<int>(
            std::max_element(count.begin(), count.end()) - count.begin());
        --count[big];
        ++count[k];
      }
    }

    Rng rng(derive_seed(seed, speaker));
    std::vector<std::size_t> order = idx;
    rng.shuffle(order);
    std::size_t pos = 0;
    for (int k = 0; k < 3; ++k) {
      for (std::size_t c = 0; c < count[k]; ++c) {
        records[order[pos++]].split = kSplits[k];
      }
    }
  }
  return Manifest(std::move(records));
}

Manifest filter_by_gender(const Manifest& manifest, Gender gender) {
  std::vector<SampleRecord> out;
  for (const auto& r : manifest.records()) {
    if (r.gender == gender) out.push_back(r);
  }
  return Manifest(std::move(out));
}

}  // namespace msrf
