// msrf/embedding_store.h

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

// Keyed embedding tables and the MSRF binary matrix format.
//
// MSRF layout, all integers little-endian:
//
//   "MSRF"            4 bytes magic
//   u32 version       1 = float32 payload, 2 = float64 payload
//   u32 dim
//   u64 count
//   count x { u16 id_len, id_len bytes UTF-8 id, dim x f32|f64 }
//
// Version 1 is the interchange format for externally computed embeddings
// (e.g. 4,096-dim FC7 activations) and extracted audio features. Version 2
// carries model parameters, which must survive a save/load bit-exactly.

#ifndef MSRF_EMBEDDING_STORE_H_
#define MSRF_EMBEDDING_STORE_H_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "msrf/manifest.h"
#include "msrf/matrix.h"

namespace msrf {

constexpr std::size_t kFc7Dim = 4096;

enum class Precision : std::uint32_t { kF32 = 1, kF64 = 2 };

class EmbeddingTable {
 public:
  EmbeddingTable() = default;
  EmbeddingTable(std::size_t dim, std::string source_tag)
      : dim_(dim), source_tag_(std::move(source_tag)) {}

  /// Appends an entry. Throws DuplicateId, DimensionMismatch, or
  /// NonFiniteInput.
  void add(const std::string& id, std::span<const double> values);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return ids_.size(); }
  const std::string& source_tag() const { return source_tag_; }
  void set_source_tag(std::string tag) { source_tag_ = std::move(tag); }

  const std::vector<std::string>& ids() const { return ids_; }
  bool contains(const std::string& id) const { return index_.count(id) != 0; }
  /// Vector for `id`, or nullopt.
  std::optional<std::span<const double>> find(const std::string& id) const;
  std::span<const double> row(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }

 private:
  std::size_t dim_ = 0;
  std::string source_tag_;
  std::vector<std::string> ids_;
  std::vector<double> values_;
  std::unordered_map<std::string, std::size_t> index_;
};

/// Parses an MSRF file. The source tag is taken from the file stem.
/// Throws CorruptFile on bad magic/version, truncated or trailing payload,
/// or non-finite values; DuplicateId on repeated ids.
EmbeddingTable load_embeddings(const std::filesystem::path& path);
EmbeddingTable decode_embeddings(std::span<const unsigned char> bytes,
                                 std::string source_tag = {});

void write_embeddings(const std::filesystem::path& path,
                      const EmbeddingTable& table,
                      Precision precision = Precision::kF32);
std::vector<unsigned char> encode_embeddings(
    const EmbeddingTable& table, Precision precision = Precision::kF32);

/// Table whose i-th entry is row i of `m` keyed by ids[i].
EmbeddingTable table_from_matrix(const std::vector<std::string>& ids,
                                 const FeatureMatrix& m,
                                 const std::string& source_tag);

/// Rows ordered exactly as manifest.records(). Throws MissingEmbedding
/// listing the absent ids.
FeatureMatrix align(const EmbeddingTable& table, const Manifest& manifest);

/// Deterministic stand-in for a CNN feature layer: flattens `image`,
/// projects it to `dim` outputs with a seeded Rademacher matrix scaled by
/// 1/sqrt(n), then applies max(0, .). Pure in (image, dim, seed).
std::vector<double> stub_embed(const FeatureMatrix& image, std::size_t dim,
                               std::uint64_t seed);

/// Text interchange: one "id,v0,v1,..." line per entry, no header.
std::string embeddings_to_csv(const EmbeddingTable& table);
EmbeddingTable embeddings_from_csv(const std::string& text,
                                   std::string source_tag = {});

}  // namespace msrf

#endif  // MSRF_EMBEDDING_STORE_H_
