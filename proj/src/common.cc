// msrf/common.cc

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

#include "msrf/common.h"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cmath>
#include <exception>
#include <mutex>
#include <numbers>
#include <thread>

namespace msrf {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kDuplicateId: return "DuplicateId";
    case ErrorCode::kInconsistentGender: return "InconsistentGender";
    case ErrorCode::kBadRatios: return "BadRatios";
    case ErrorCode::kSplitsAssigned: return "SplitsAssigned";
    case ErrorCode::kPrecondition: return "Precondition";
    case ErrorCode::kUnsupportedCodec: return "UnsupportedCodec";
    case ErrorCode::kBadNfft: return "BadNfft";
    case ErrorCode::kBadFilterSpec: return "BadFilterSpec";
    case ErrorCode::kCorruptFile: return "CorruptFile";
    case ErrorCode::kMissingEmbedding: return "MissingEmbedding";
    case ErrorCode::kDegenerateLabels: return "DegenerateLabels";
    case ErrorCode::kNonFiniteInput: return "NonFiniteInput";
    case ErrorCode::kMaskMismatch: return "MaskMismatch";
    case ErrorCode::kDimensionMismatch: return "DimensionMismatch";
    case ErrorCode::kGenderLeak: return "GenderLeak";
    case ErrorCode::kDegenerateBranch: return "DegenerateBranch";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kConfigError: return "ConfigError";
  }
  return "Unknown";
}

const char* gender_name(Gender g) {
  return g == Gender::kMale ? "Male" : "Female";
}

Gender parse_gender(std::string_view text) {
  std::string lower;
  for (char c : text) lower.push_back(static_cast<char>(std::tolower(c)));
  if (lower == "m" || lower == "male") return Gender::kMale;
  if (lower == "f" || lower == "female") return Gender::kFemale;
  throw Error(ErrorCode::kParseError,
              "unknown gender '" + std::string(text) + "'");
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t seed,
                          std::initializer_list<std::uint64_t> coords) {
  std::uint64_t h = mix64(seed);
  for (std::uint64_t c : coords) h = mix64(h ^ mix64(c + 0x632be59bd9b4e019ULL));
  return h;
}

std::uint64_t derive_seed(std::uint64_t seed, std::string_view tag) {
  return derive_seed(seed, {hash_string(tag)});
}

std::uint64_t hash_string(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

std::uint64_t Rng::next_u64() {
  state_ += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = state_;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

double Rng::uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

std::size_t Rng::below(std::size_t n) {
  unsigned __int128 m = static_cast<unsigned __int128>(next_u64()) * n;
  return static_cast<std::size_t>(m >> 64);
}

double Rng::normal() {
  if (has_spare_) {
    has_spare_ = false;
    return spare_;
  }
  double u1 = 0.0;
  while (u1 <= 0.0) u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double theta = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(theta);
  has_spare_ = true;
  return r * std::cos(theta);
}

void parallel_for(std::size_t n, int workers,
                  const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  std::size_t nthreads =
      std::min<std::size_t>(n, static_cast<std::size_t>(std::max(1, workers)));
  if (nthreads == 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;
  auto worker = [&]() {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
      }
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(nthreads);
  for (std::size_t t = 0; t < nthreads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

std::vector<std::string> make_vocab(std::span<const std::string> labels) {
  std::vector<std::string> vocab(labels.begin(), labels.end());
  std::sort(vocab.begin(), vocab.end());
  vocab.erase(std::unique(vocab.begin(), vocab.end()), vocab.end());
  return vocab;
}

std::vector<std::size_t> encode_labels(std::span<const std::string> labels,
                                       const std::vector<std::string>& vocab) {
  std::vector<std::size_t> out;
  out.reserve(labels.size());
  for (const auto& l : labels) {
    auto it = std::lower_bound(vocab.begin(), vocab.end(), l);
    if (it == vocab.end() || *it != l) {
      throw Error(ErrorCode::kPrecondition, "label '" + l + "' not in vocabulary");
    }
    out.push_back(static_cast<std::size_t>(it - vocab.begin()));
  }
  return out;
}

}  // namespace msrf
