// msrf/test_embedding_store.cc

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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <cstring>
#include <limits>

#include "msrf/embedding_store.h"
#include "oracles.h"

using namespace msrf;

namespace {

EmbeddingTable sample_table(std::size_t n, std::size_t dim, std::uint64_t seed) {
  EmbeddingTable t(dim, "face");
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<double> v(dim);
    for (auto& x : v) x = rng.normal() * 10.0;
    t.add("id" + std::to_string(i), v);
  }
  return t;
}

ErrorCode decode_code(const std::vector<unsigned char>& b) {
  try {
    decode_embeddings(b);
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::kIoError;
}

}  // namespace

TEST_CASE("byte layout of a tiny table") {
  EmbeddingTable t(2, "x");
  std::vector<double> v{1.0, -2.0};
  t.add("ab", v);
  auto b = encode_embeddings(t, Precision::kF32);
  REQUIRE(b.size() == 4 + 4 + 4 + 8 + 2 + 2 + 8);
  CHECK(std::memcmp(b.data(), "MSRF", 4) == 0);
  CHECK(b[4] == 1);
  CHECK(b[8] == 2);
  CHECK(b[12] == 1);
  CHECK(b[20] == 2);
  CHECK(b[21] == 0);
  CHECK(b[22] == 'a');
  float f;
  std::memcpy(&f, b.data() + 28, 4);
  CHECK(f == -2.0f);
}

TEST_CASE("f64 round trip is bit-exact, f32 within float rounding") {
  EmbeddingTable t = sample_table(20, 33, 1);
  EmbeddingTable b64 = decode_embeddings(encode_embeddings(t, Precision::kF64));
  EmbeddingTable b32 = decode_embeddings(encode_embeddings(t, Precision::kF32));
  REQUIRE(b64.size() == 20);
  REQUIRE(b64.dim() == 33);
  for (std::size_t i = 0; i < 20; ++i) {
    CHECK(b64.ids()[i] == t.ids()[i]);
    for (std::size_t j = 0; j < 33; ++j) {
      CHECK(b64.row(i)[j] == t.row(i)[j]);
      CHECK(b32.row(i)[j] == static_cast<double>(static_cast<float>(t.row(i)[j])));
    }
  }
  CHECK(encode_embeddings(b64, Precision::kF64) == encode_embeddings(t, Precision::kF64));
}

TEST_CASE("file round trip takes the tag from the stem") {
  auto dir = oracle::scratch_dir("emb");
  EmbeddingTable t = sample_table(5, 4, 2);
  write_embeddings(dir / "voice.msrf", t, Precision::kF64);
  EmbeddingTable back = load_embeddings(dir / "voice.msrf");
  CHECK(back.source_tag() == "voice");
  CHECK(back.size() == 5);
  CHECK_THROWS_AS(load_embeddings(dir / "nope.msrf"), Error);
  std::filesystem::remove_all(dir);
}

TEST_CASE("corrupt payloads are rejected") {
  EmbeddingTable t = sample_table(3, 4, 3);
  auto good = encode_embeddings(t);
  auto bad_magic = good;
  bad_magic[0] = 'X';
  CHECK(decode_code(bad_magic) == ErrorCode::kCorruptFile);
  auto bad_version = good;
  bad_version[4] = 9;
  CHECK(decode_code(bad_version) == ErrorCode::kCorruptFile);
  auto truncated = good;
  truncated.pop_back();
  CHECK(decode_code(truncated) == ErrorCode::kCorruptFile);
  auto trailing = good;
  trailing.push_back(0);
  CHECK(decode_code(trailing) == ErrorCode::kCorruptFile);
  auto nan = good;
  const float q = std::numeric_limits<float>::quiet_NaN();
  std::memcpy(nan.data() + good.size() - 4, &q, 4);
  CHECK(decode_code(nan) == ErrorCode::kCorruptFile);
  std::vector<unsigned char> tiny{'M', 'S'};
  CHECK(decode_code(tiny) == ErrorCode::kCorruptFile);
}

TEST_CASE("duplicate ids are rejected on add and on decode") {
  EmbeddingTable t(2, "x");
  std::vector<double> v{1, 2};
  t.add("a", v);
  CHECK_THROWS_AS(t.add("a", v), Error);
  std::vector<double> w{1, 2, 3};
  CHECK_THROWS_AS(t.add("b", w), Error);
  std::vector<double> inf{1, std::numeric_limits<double>::infinity()};
  CHECK_THROWS_AS(t.add("c", inf), Error);
  auto bytes = encode_embeddings(t);
  // Append a second record with the same id and bump the count.
  std::vector<unsigned char> rec(bytes.begin() + 20, bytes.end());
  bytes.insert(bytes.end(), rec.begin(), rec.end());
  bytes[12] = 2;
  CHECK(decode_code(bytes) == ErrorCode::kDuplicateId);
}

TEST_CASE("align follows manifest order and lists missing ids") {
  EmbeddingTable t = sample_table(3, 2, 4);
  std::vector<SampleRecord> recs(2);
  recs[0].sample_id = "id2";
  recs[0].speaker = "s";
  recs[1].sample_id = "id0";
  recs[1].speaker = "s";
  Manifest m(recs);
  FeatureMatrix x = align(t, m);
  REQUIRE(x.rows() == 2);
  CHECK(x(0, 1) == t.row(2)[1]);
  CHECK(x(1, 0) == t.row(0)[0]);
  recs[1].sample_id = "ghost";
  try {
    align(t, Manifest(recs));
    FAIL("missing id accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kMissingEmbedding);
    CHECK(std::string(e.what()).find("ghost") != std::string::npos);
  }
}

TEST_CASE("CSV interchange round trip") {
  EmbeddingTable t = sample_table(4, 3, 5);
  EmbeddingTable back = embeddings_from_csv(embeddings_to_csv(t), "face");
  REQUIRE(back.size() == 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(back.row(i)[j] == t.row(i)[j]);
  CHECK_THROWS_AS(embeddings_from_csv("a,1,2\nb,1\n"), Error);
}

TEST_CASE("table_from_matrix keys rows by id") {
  FeatureMatrix m = FeatureMatrix::from_rows({{1, 2}, {3, 4}});
  EmbeddingTable t = table_from_matrix({"p", "q"}, m, "mfcc");
  CHECK(t.source_tag() == "mfcc");
  CHECK((*t.find("q"))[1] == 4.0);
  CHECK_FALSE(t.find("r").has_value());
}

TEST_CASE("stub_embed is pure, non-negative and seed dependent") {
  FeatureMatrix img(8, 8);
  Rng rng(6);
  for (auto& v : img.data()) v = rng.uniform();
  auto a = stub_embed(img, 64, 11);
  CHECK(a.size() == 64);
  CHECK(a == stub_embed(img, 64, 11));
  CHECK(a != stub_embed(img, 64, 12));
  for (double v : a) CHECK(v >= 0.0);
  // Rademacher projection scaled by 1/sqrt(n): each pre-activation is a sum
  // of +-x/8, bounded by the L1 norm over 8.
  double l1 = 0.0;
  for (double v : img.data()) l1 += v;
  for (double v : a) CHECK(v <= l1 / 8.0 + 1e-12);
}
