// msrf/embedding_store.cc

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

#include "msrf/embedding_store.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

#include "msrf/common.h"

namespace msrf {

namespace {

class Reader {
 public:
  explicit Reader(std::span<const unsigned char> bytes) : bytes_(bytes) {}

  const unsigned char* take(std::size_t n) {
    if (bytes_.size() - pos_ < n) {
      throw Error(ErrorCode::kCorruptFile,
                  "truncated payload at byte " + std::to_string(pos_));
    }
    const unsigned char* p = bytes_.data() + pos_;
    pos_ += n;
    return p;
  }
  template <typename T>
  T get() {
    T v{};
    const unsigned char* p = take(sizeof(T));
    for (std::size_t i = 0; i < sizeof(T); ++i) {
      v |= static_cast<T>(static_cast<T>(p[i]) << (8 * i));
    }
    return v;
  }
  std::size_t remaining() const { return bytes_.size() - pos_; }

 private:
  std::span<const unsigned char> bytes_;
  std::size_t pos_ = 0;
};

template <typename T>
void put(std::vector<unsigned char>& out, T v) {
  for (std::size_t i = 0; i < sizeof(T); ++i) {
    out.push_back(static_cast<unsigned char>((v >> (8 * i)) & 0xff));
  }
}

void append_tag(std::vector<unsigned char>& out, const char* tag) {
  for (; *tag; ++tag) out.push_back(static_cast<unsigned char>(*tag));
}

}  // namespace

void EmbeddingTable::add(const std::string& id, std::span<const double> values) {
  if (values.size() != dim_) {
    throw Error(ErrorCode::kDimensionMismatch,
                "entry '" + id + "' has " + std::to_string(values.size()) +
                    " values, table dim is " + std::to_string(dim_));
  }
  if (id.size() > 0xffff) {
    throw Error(ErrorCode::kPrecondition, "id longer than 65535 bytes");
  }
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw Error(ErrorCode::kNonFiniteInput, "entry '" + id + "'");
    }
  }
  if (!index_.emplace(id, ids_.size()).second) {
    throw Error(ErrorCode::kDuplicateId, "embedding id '" + id + "'");
  }
  ids_.push_back(id);
  values_.insert(values_.end(), values.begin(), values.end());
}

std::optional<std::span<const double>> EmbeddingTable::find(
    const std::string& id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return row(it->second);
}

EmbeddingTable decode_embeddings(std::span<const unsigned char> bytes,
                                 std::string source_tag) {
  Reader in(bytes);
  if (bytes.size() < 4 || std::memcmp(in.take(4), "MSRF", 4) != 0) {
    throw Error(ErrorCode::kCorruptFile, "bad magic");
  }
  const auto version = in.get<std::uint32_t>();
  if (version != 1 && version != 2) {
    throw Error(ErrorCode::kCorruptFile,
                "unsupported version " + std::to_string(version));
  }
  const auto dim = in.get<std::uint32_t>();
  const auto count = in.get<std::uint64_t>();
  const std::size_t value_bytes = version == 1 ? 4 : 8;

  EmbeddingTable table(dim, std::move(source_tag));
  std::vector<double> row(dim);
  for (std::uint64_t e = 0; e < count; ++e) {
    const auto id_len = in.get<std::uint16_t>();
    const unsigned char* id_bytes = in.take(id_len);
    std::string id(reinterpret_cast<const char*>(id_bytes), id_len);
    const unsigned char* payload = in.take(value_bytes * dim);
    for (std::size_t j = 0; j < dim; ++j) {
      const unsigned char* p = payload + j * value_bytes;
      if (version == 1) {
        std::uint32_t u = 0;
        for (int b = 0; b < 4; ++b) u |= static_cast<std::uint32_t>(p[b]) << (8 * b);
        float f;
        std::memcpy(&f, &u, sizeof f);
        row[j] = f;
      } else {
        std::uint64_t u = 0;
        for (int b = 0; b < 8; ++b) u |= static_cast<std::uint64_t>(p[b]) << (8 * b);
        std::memcpy(&row[j], &u, sizeof(double));
      }
      if (!std::isfinite(row[j])) {
        throw Error(ErrorCode::kCorruptFile, "non-finite value in '" + id + "'");
      }
    }
    table.add(id, row);
  }
  if (in.remaining() != 0) {
    throw Error(ErrorCode::kCorruptFile,
                std::to_string(in.remaining()) + " trailing bytes after " +
                    std::to_string(count) + " entries");
  }
  return table;
}

EmbeddingTable load_embeddings(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::kIoError, "cannot open " + path.string());
  std::vector<unsigned char> bytes((std::istreambuf_iterator<char>(in)),
                                   std::istreambuf_iterator<char>());
  try {
    return decode_embeddings(bytes, path.stem().string());
  } catch (const Error& e) {
    throw Error(e.code(), path.string() + ": " + e.detail());
  }
}

std::vector<unsigned char> encode_embeddings(const EmbeddingTable& table,
                                             Precision precision) {
  std::vector<unsigned char> out;
  const std::size_t value_bytes = precision == Precision::kF32 ? 4 : 8;
  out.reserve(20 + table.size() * (2 + 16 + value_bytes * table.dim()));
  append_tag(out, "MSRF");
  put<std::uint32_t>(out, static_cast<std::uint32_t>(precision));
  put<std::uint32_t>(out, static_cast<std::uint32_t>(table.dim()));
  put<std::uint64_t>(out, table.size());
  for (std::size_t i = 0; i < table.size(); ++i) {
    const std::string& id = table.ids()[i];
    put<std::uint16_t>(out, static_cast<std::uint16_t>(id.size()));
    out.insert(out.end(), id.begin(), id.end());
    for (double v : table.row(i)) {
      if (precision == Precision::kF32) {
        float f = static_cast<float>(v);
        std::uint32_t u;
        std::memcpy(&u, &f, sizeof u);
        put<std::uint32_t>(out, u);
      } else {
        std::uint64_t u;
        std::memcpy(&u, &v, sizeof u);
        put<std::uint64_t>(out, u);
      }
    }
  }
  return out;
}

void write_embeddings(const std::filesystem::path& path,
                      const EmbeddingTable& table, Precision precision) {
  auto bytes = encode_embeddings(table, precision);
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::kIoError, "cannot write " + path.string());
  out.write(reinterpret_cast<const char*>(bytes.data()),
            static_cast<std::streamsize>(bytes.size()));
  if (!out) throw Error(ErrorCode::kIoError, "write failed: " + path.string());
}

EmbeddingTable table_from_matrix(const std::vector<std::string>& ids,
                                 const FeatureMatrix& m,
                                 const std::string& source_tag) {
  if (ids.size() != m.rows()) {
    throw Error(ErrorCode::kDimensionMismatch, "id count != matrix rows");
  }
  EmbeddingTable table(m.cols(), source_tag);
  for (std::size_t i = 0; i < ids.size(); ++i) table.add(ids[i], m.row(i));
  return table;
}

FeatureMatrix align(const EmbeddingTable& table, const Manifest& manifest) {
  FeatureMatrix out(manifest.size(), table.dim());
  std::vector<std::string> missing;
  for (std::size_t i = 0; i < manifest.size(); ++i) {
    const auto& id = manifest.records()[i].sample_id;
    auto v = table.find(id);
    if (!v) {
      missing.push_back(id);
      continue;
    }
    std::copy(v->begin(), v->end(), out.row(i).begin());
  }
  if (!missing.empty()) {
    std::string list;
    for (std::size_t i = 0; i < missing.size() && i < 10; ++i) {
      list += (i ? ", " : "") + missing[i];
    }
    if (missing.size() > 10) {
      list += ", ... (" + std::to_string(missing.size()) + " total)";
    }
    throw Error(ErrorCode::kMissingEmbedding,
                "no entry in '" + table.source_tag() + "' for: " + list);
  }
  out.set_tag(table.source_tag());
  return out;
}

std::vector<double> stub_embed(const FeatureMatrix& image, std::size_t dim,
                               std::uint64_t seed) {
  if (dim == 0) throw Error(ErrorCode::kPrecondition, "stub dim must be >= 1");
  if (!image.all_finite()) {
    throw Error(ErrorCode::kNonFiniteInput, "stub_embed input");
  }
  const auto& x = image.data();
  const std::size_t n = x.size();
  std::vector<double> out(dim, 0.0);
  if (n == 0) return out;
  const double scale = 1.0 / std::sqrt(static_cast<double>(n));
  const std::size_t blocks = (n + 63) / 64;
  for (std::size_t j = 0; j < dim; ++j) {
    const std::uint64_t base = derive_seed(seed, {j});
    double acc = 0.0;
    for (std::size_t b = 0; b < blocks; ++b) {
      std::uint64_t bits = mix64(base + b);
      const std::size_t lo = b * 64, hi = std::min(n, lo + 64);
      for (std::size_t i = lo; i < hi; ++i, bits >>= 1) {
        acc += (bits & 1u) ? x[i] : -x[i];
      }
    }
    out[j] = std::max(0.0, acc * scale);
  }
  return out;
}

std::string embeddings_to_csv(const EmbeddingTable& table) {
  std::string out;
  char buf[64];
  for (std::size_t i = 0; i < table.size(); ++i) {
    out += table.ids()[i];
    for (double v : table.row(i)) {
      auto res = std::to_chars(buf, buf + sizeof buf, v);
      out.push_back(',');
      out.append(buf, res.ptr);
    }
    out.push_back('\n');
  }
  return out;
}

EmbeddingTable embeddings_from_csv(const std::string& text,
                                   std::string source_tag) {
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  std::optional<EmbeddingTable> table;
  std::vector<double> values;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::kParseError,
                  "line " + std::to_string(line_no) + ": no values");
    }
    std::string id = line.substr(0, comma);
    values.clear();
    const char* p = line.data() + comma + 1;
    const char* end = line.data() + line.size();
    while (p <= end) {
      const char* next = std::find(p, end, ',');
      double v = 0.0;
      auto res = std::from_chars(p, next, v);
      if (res.ec != std::errc() || res.ptr != next) {
        throw Error(ErrorCode::kParseError,
                    "line " + std::to_string(line_no) + ": bad number");
      }
      values.push_back(v);
      p = next + 1;
    }
    if (!table) table.emplace(values.size(), source_tag);
    table->add(id, values);
  }
  return table ? std::move(*table) : EmbeddingTable(0, std::move(source_tag));
}

}  // namespace msrf
