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

#include "ccl/bm25.h"

#include <gtest/gtest.h>

#include <cmath>

#include "test_util.h"

namespace ccl {
namespace {

TEST(Bm25, NoSharedTokenScoresZero) {
  std::vector<std::string> pool = {"alpha beta", "gamma delta"};
  auto hits = Bm25Rank(std::vector<std::string>{"epsilon"}, pool);
  for (const Bm25Hit &h : hits) EXPECT_EQ(h.score, 0.0);
}

// Three documents, query "Cat": only doc 0 contains "cat".
//   N = 3, n = 1: idf = ln(2.5 / 1.5)
//   lengths 3, 3, 4: avgdl = 10 / 3
//   doc 0: tf = 1, norm = 1 - b + b * 3 / (10/3) = 0.925
//   score = idf * 1 * 2.5 / (1 + 1.5 * 0.925)
TEST(Bm25, HandComputedToy) {
  std::vector<std::string> pool = {"the cat sat", "the dog ran", "a bird flew high"};
  const double idf = std::log(2.5 / 1.5);
  const double want = idf * 2.5 / (1 + 1.5 * 0.925);
  auto hits = Bm25Rank(std::vector<std::string>{"Cat"}, pool);
  EXPECT_EQ(hits[0].doc, 0u);
  EXPECT_NEAR(hits[0].score, want, 1e-12);
  EXPECT_EQ(hits[1].score, 0.0);
  EXPECT_EQ(hits[1].doc, 1u);
  EXPECT_EQ(hits[2].doc, 2u);
}

TEST(Bm25, IdfFlooredAtZero) {
  std::vector<std::string> pool = {"the cat sat", "the dog ran", "a bird flew high"};
  Bm25Index index(pool);
  EXPECT_EQ(index.idf("the"), 0.0);
  EXPECT_NEAR(index.idf("bird"), std::log(2.5 / 1.5), 1e-12);
  EXPECT_NEAR(index.idf("unseen"), std::log(3.5 / 0.5), 1e-12);
}

TEST(Bm25, RepeatedQueryTokensCount) {
  std::vector<std::string> pool = {"the cat sat", "the dog ran", "a bird flew high"};
  Bm25Index index(pool);
  const std::vector<std::string> once = {"cat"}, twice = {"cat", "cat"};
  EXPECT_NEAR(index.Scores(twice)[0], 2 * index.Scores(once)[0], 1e-12);
}

TEST(Bm25, DuplicateDocsTieInIndexOrder) {
  std::vector<std::string> pool = {"x y", "hello world", "hello world", "a b", "c d"};
  auto hits = Bm25Rank(std::vector<std::string>{"hello there"}, pool);
  EXPECT_EQ(hits[0].doc, 1u);
  EXPECT_EQ(hits[1].doc, 2u);
  EXPECT_EQ(hits[0].score, hits[1].score);
  EXPECT_GT(hits[0].score, 0.0);
}

TEST(Bm25, HistoryConcatenatedAndLowercased) {
  EXPECT_EQ(Bm25Tokens(std::vector<std::string>{"Hi There", "you"}),
            (std::vector<std::string>{"hi", "there", "you"}));
}

TEST(Bm25, EmptyPool) {
  EXPECT_CCL_ERROR(Bm25Rank(std::vector<std::string>{"a"}, std::vector<std::string>{}), ErrorCode::kPrecondition);
}

}  // namespace
}  // namespace ccl
