// Copyright 2026 The CCL Authors.
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

#include "ccl/embedstore.h"

#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "ccl/curvedspace.h"
#include "ccl/util.h"
#include "test_util.h"

namespace ccl {
namespace {

const EncodingMode kB = EncodingMode::Before();
const EncodingMode kA = EncodingMode::After();

double Norm(const std::vector<float> &v) {
  double s = 0;
  for (float x : v) s += static_cast<double>(x) * x;
  return std::sqrt(s);
}

TEST(MockEncode, Deterministic) {
  MockEncoder enc(16, 3);
  EXPECT_EQ(enc.Encode("hi", kB), enc.Encode("hi", kB));
  EXPECT_EQ(MockEncode("hi", kB, 16, 3), enc.Encode("hi", kB));
}

TEST(MockEncode, ModeChangesVector) {
  MockEncoder enc(16, 3);
  EXPECT_NE(enc.Encode("hi", kB), enc.Encode("hi", kA));
  EXPECT_NE(enc.Encode("hi", kB), enc.Encode("hi", EncodingMode::BeforeForDistance(2)));
  EXPECT_NE(MockEncode("hi", kB, 16, 3), MockEncode("hi", kB, 16, 4));
}

TEST(MockEncode, UnitNorm) {
  for (int k = 0; k < 100; ++k) {
    EXPECT_NEAR(Norm(MockEncode("t" + std::to_string(k), kA, 384, 1)), 1.0, 1e-5);
  }
}

TEST(MockEncode, DimOneRejected) {
  EXPECT_CCL_ERROR(MockEncode("hi", kB, 1, 0), ErrorCode::kPrecondition);
}

TEST(MockEncode, DistinctTextsNearlyOrthogonal) {
  int below = 0;
  double max_abs = 0;
  for (int k = 0; k < 10000; ++k) {
    auto a = MockEncode("a" + std::to_string(k), kB, 384, 11);
    auto b = MockEncode("b" + std::to_string(k), kA, 384, 11);
    const double c = std::abs(Cosine(a, b));
    max_abs = std::max(max_abs, c);
    if (c < 0.3) ++below;
  }
  EXPECT_EQ(below, 10000) << "max |cos| " << max_abs;
}

EmbeddingStore SmallStore() {
  EmbeddingStore::Builder b(4, "hand");
  b.Add({"a", kB}, std::vector<float>{1, 0, 0, 0});
  b.Add({"a", kA}, std::vector<float>{0, 1, 0, 0});
  b.Add({"b", EncodingMode::BeforeForDistance(3)}, std::vector<float>{0, 0, 0.6f, 0.8f});
  return std::move(b).Build();
}

TEST(Builder, RejectsBadRows) {
  EmbeddingStore::Builder b(2, "x");
  EXPECT_CCL_ERROR(b.Add({"a", kB}, std::vector<float>{1, 0, 0}), ErrorCode::kDimMismatch);
  EXPECT_CCL_ERROR(b.Add({"a", kB}, std::vector<float>{1, 1}), ErrorCode::kNormError);
  b.Add({"a", kB}, std::vector<float>{1, 0});
  EXPECT_CCL_ERROR(b.Add({"a", kB}, std::vector<float>{0, 1}), ErrorCode::kFormatError);
  EXPECT_CCL_ERROR(b.Add({"a", {Direction::kAfter, SpeakerToken::kE}}, std::vector<float>{0, 1}),
                   ErrorCode::kFormatError);
}

TEST(Store, LookupAndMissing) {
  EmbeddingStore s = SmallStore();
  EXPECT_EQ(s.size(), 3u);
  EXPECT_FLOAT_EQ(s.Row("a", kA)[1], 1.0f);
  EXPECT_TRUE(s.Contains({"b", EncodingMode::BeforeForDistance(1)}));
  EXPECT_EQ(s.Find({"b", kB}), nullptr);
  EXPECT_CCL_ERROR(s.Row("b", kB), ErrorCode::kMissingEmbedding);
}

TEST(Store, RoundTripAndVecSize) {
  testing::TempDir dir("store");
  const std::string base = dir.File("s");
  WriteStore(SmallStore(), base);
  EXPECT_EQ(std::filesystem::file_size(base + ".vec"), 48u);
  EXPECT_TRUE(StoreFilesExist(base));
  EmbeddingStore back = ReadStore(base);
  EXPECT_EQ(back.norm_warnings(), 0u);
  EXPECT_EQ(back.encoder_id(), "hand");
  ASSERT_EQ(back.size(), 3u);
  const EmbeddingStore original = SmallStore();
  for (size_t r = 0; r < back.size(); ++r) {
    const EmbeddingKey &k = back.KeyAt(r);
    Vec want = original.Row(k);
    Vec got = back.Row(k);
    EXPECT_TRUE(std::equal(want.begin(), want.end(), got.begin()));
  }
}

void PatchRow(const std::string &vec_path, int dim, int row, const std::vector<float> &v) {
  std::fstream f(vec_path, std::ios::in | std::ios::out | std::ios::binary);
  f.seekp(static_cast<std::streamoff>(row) * dim * 4);
  f.write(reinterpret_cast<const char *>(v.data()), static_cast<std::streamsize>(v.size() * 4));
}

TEST(Store, CountMismatchIsFormatError) {
  testing::TempDir dir("store");
  const std::string base = dir.File("s");
  WriteStore(SmallStore(), base);
  std::string meta = ReadFile(base + ".meta.jsonl");
  meta.replace(meta.find("\"count\":3"), 9, "\"count\":4");
  WriteFileAtomic(base + ".meta.jsonl", meta);
  EXPECT_CCL_ERROR(ReadStore(base), ErrorCode::kFormatError);
}

TEST(Store, TruncatedVecIsFormatError) {
  testing::TempDir dir("store");
  const std::string base = dir.File("s");
  WriteStore(SmallStore(), base);
  std::filesystem::resize_file(base + ".vec", 40);
  EXPECT_CCL_ERROR(ReadStore(base), ErrorCode::kFormatError);
}

TEST(Store, ZeroRowIsNormError) {
  testing::TempDir dir("store");
  const std::string base = dir.File("s");
  WriteStore(SmallStore(), base);
  PatchRow(base + ".vec", 4, 1, {0, 0, 0, 0});
  try {
    ReadStore(base);
    FAIL();
  } catch (const Error &e) {
    EXPECT_EQ(e.code(), ErrorCode::kNormError);
    EXPECT_EQ(e.location(), 1);
  }
}

TEST(Store, SlightlyOffNormRenormalized) {
  testing::TempDir dir("store");
  const std::string base = dir.File("s");
  WriteStore(SmallStore(), base);
  PatchRow(base + ".vec", 4, 2, {0, 0, 0.6f * 1.0005f, 0.8f * 1.0005f});
  EmbeddingStore s = ReadStore(base);
  EXPECT_EQ(s.norm_warnings(), 1u);
  Vec row = s.Row("b", EncodingMode::BeforeForDistance(1));
  EXPECT_NEAR(Norm({row.begin(), row.end()}), 1.0, 1e-6);
}

TEST(Store, MissingFilesIsIoError) {
  testing::TempDir dir("store");
  EXPECT_FALSE(StoreFilesExist(dir.File("none")));
  EXPECT_CCL_ERROR(ReadStore(dir.File("none")), ErrorCode::kIoError);
}

TEST(Store, EmptyStoreRoundTrip) {
  testing::TempDir dir("store");
  WriteStore(EmbeddingStore::Builder(8, "mock").Build(), dir.File("e"));
  EmbeddingStore s = ReadStore(dir.File("e"));
  EXPECT_EQ(s.size(), 0u);
  EXPECT_EQ(s.dim(), 8);
}

TEST(StoreEncoder, ServesKnownKeysOnly) {
  auto store = std::make_shared<const EmbeddingStore>(SmallStore());
  StoreEncoder enc(store);
  EXPECT_EQ(enc.Encode("a", kB), (std::vector<float>{1, 0, 0, 0}));
  EXPECT_CCL_ERROR(enc.Encode("zzz", kB), ErrorCode::kEncoderUnavailable);
}

TEST(Requests, RoundTrip) {
  std::vector<EmbeddingKey> keys = {{"a", kB}, {"a", kA}, {"b c", EncodingMode::BeforeForDistance(2)}};
  EXPECT_EQ(ParseRequestsJsonl(RequestsToJsonl(keys)), keys);
  EXPECT_TRUE(ParseRequestsJsonl("").empty());
}

TEST(EncodingMode, Prefixes) {
  EXPECT_EQ(Prefix(kB), "[BEFORE] ");
  EXPECT_EQ(Prefix(kA), "[AFTER] ");
  EXPECT_EQ(Prefix(EncodingMode::BeforeForDistance(4)), "[E] [BEFORE] ");
  EXPECT_EQ(Prefix(EncodingMode::BeforeForDistance(3)), "[O] [BEFORE] ");
  EXPECT_EQ(Prefix(EncodingMode::BeforeForDistance(-1)), "[O] [BEFORE] ");
}

}  // namespace
}  // namespace ccl
