// msrf/manifest.h

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

#ifndef MSRF_MANIFEST_H_
#define MSRF_MANIFEST_H_

#include <array>
#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "msrf/common.h"

namespace msrf {

enum class Split { kUnassigned, kTrain, kVal, kTest };

const char* split_name(Split s);  // "", "train", "val", "test"

struct SampleRecord {
  std::string sample_id;
  std::string face_path;
  std::string audio_path;
  std::string speaker;
  Gender gender = Gender::kMale;
  Split split = Split::kUnassigned;
};

/// Immutable sample catalog. Construction validates:
///  - sample ids are unique (DuplicateId),
///  - each speaker has exactly one gender (InconsistentGender),
///  - when every record carries a split, every speaker occurs in Train.
class Manifest {
 public:
  Manifest() = default;
  explicit Manifest(std::vector<SampleRecord> records);

  const std::vector<SampleRecord>& records() const { return records_; }
  std::size_t size() const { return records_.size(); }
  bool empty() const { return records_.empty(); }

  /// Sorted unique speaker labels.
  const std::vector<std::string>& speaker_vocab() const { return vocab_; }
  /// Number of distinct speakers per gender, indexed by Gender.
  std::size_t speaker_count(Gender g) const {
    return gender_counts_[static_cast<int>(g)];
  }
  Gender gender_of(const std::string& speaker) const;

  bool fully_assigned() const;
  bool any_assigned() const;

  /// Indices of records in `split`, in manifest order.
  std::vector<std::size_t> indices(Split split) const;
  std::vector<std::string> speakers_at(const std::vector<std::size_t>& idx) const;

  /// Writes the CSV form accepted by load_manifest.
  void save(const std::filesystem::path& path) const;

 private:
  std::vector<SampleRecord> records_;
  std::vector<std::string> vocab_;
  std::vector<Gender> vocab_gender_;
  std::array<std::size_t, 2> gender_counts_{0, 0};
};

/// Reads a `sample_id,face_path,audio_path,speaker,gender,split` CSV.
/// Accepts LF or CRLF line endings, a UTF-8 BOM and RFC 4180 quoting.
/// Malformed rows raise ParseError naming the 1-based line number.
Manifest load_manifest(const std::filesystem::path& path);
Manifest parse_manifest(const std::string& text);

struct SplitRatios {
  double train = 0.7;
  double val = 0.15;
  double test = 0.15;
};

/// Stratified per-speaker split. Each speaker's records are shuffled with a
/// seed derived from (seed, speaker) and cut by largest-remainder rounding,
/// so every split with a positive ratio gets at least one sample of every
/// speaker. Requires every record unassigned and >= 3 samples per speaker.
Manifest assign_splits(const Manifest& manifest, const SplitRatios& ratios,
                       std::uint64_t seed);

/// Records of one gender, order preserved.
Manifest filter_by_gender(const Manifest& manifest, Gender gender);

}  // namespace msrf

#endif  // MSRF_MANIFEST_H_
