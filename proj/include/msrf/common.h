// msrf/common.h

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

#ifndef MSRF_COMMON_H_
#define MSRF_COMMON_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace msrf {

/// Error categories raised across the library. The CLI maps ConfigError to
/// exit code 2 and everything else to exit code 1.
enum class ErrorCode {
  kParseError,
  kDuplicateId,
  kInconsistentGender,
  kBadRatios,
  kSplitsAssigned,
  kPrecondition,
  kUnsupportedCodec,
  kBadNfft,
  kBadFilterSpec,
  kCorruptFile,
  kMissingEmbedding,
  kDegenerateLabels,
  kNonFiniteInput,
  kMaskMismatch,
  kDimensionMismatch,
  kGenderLeak,
  kDegenerateBranch,
  kIoError,
  kConfigError,
};

const char* error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_name(code)) + ": " + message),
        code_(code),
        detail_(message) {}

  ErrorCode code() const { return code_; }
  /// Message without the error-name prefix.
  const std::string& detail() const { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

enum class Gender { kMale, kFemale };

const char* gender_name(Gender g);  // "Male" / "Female"
Gender parse_gender(std::string_view text);  // m, f, male, female (any case)

// ---------------------------------------------------------------------------
// Seeding and random numbers.
//
// All randomness in the library goes through Rng so results are identical
// across standard-library implementations (std::*_distribution is not).

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derives a child seed from a master seed and a sequence of coordinates.
std::uint64_t derive_seed(std::uint64_t seed,
                          std::initializer_list<std::uint64_t> coords);
std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag);

/// FNV-1a over bytes; used to fold strings into seeds.
std::uint64_t hash_string(std::string_view s);

class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Uniform integer in [0, n).
  std::size_t below(std::size_t n);
  /// Standard normal (Box-Muller, cached pair).
  double normal();

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) {
      std::size_t j = below(i);
      std::swap(v[i - 1], v[j]);
    }
  }

 private:
  std::uint64_t state_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

// ---------------------------------------------------------------------------

/// Runs fn(i) for i in [0, n) on up to `workers` threads. Each index is
/// executed exactly once; callers write results into pre-sized slots. The
/// first exception thrown by any task is rethrown on the calling thread.
void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& fn);

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

/// Sorted unique copy of `labels`.
std::vector<std::string> make_vocab(std::span<const std::string> labels);

/// Index of each label in the sorted `vocab`. Throws Precondition for a
/// label outside the vocabulary.
std::vector<std::size_t> encode_labels(std::span<const std::string> labels,
                                       const std::vector<std::string>& vocab);

}  // namespace msrf

#endif  // MSRF_COMMON_H_
