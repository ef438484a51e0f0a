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

#include "ccl/pairgen.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <array>

#include "ccl/random.h"
#include "ccl/util.h"
#include "oracles/pair_enumerator.h"
#include "test_util.h"

namespace ccl {
namespace {

const std::vector<std::string> kPool = {"r0", "r1", "r2", "r3"};

PairGenConfig Config(PairMode mode, int window = 5) {
  PairGenConfig cfg;
  cfg.mode = mode;
  cfg.window = window;
  return cfg;
}

std::vector<TrainingPair> OfKind(const std::vector<TrainingPair> &pairs, PairKind kind) {
  std::vector<TrainingPair> out;
  std::copy_if(pairs.begin(), pairs.end(), std::back_inserter(out),
               [&](const TrainingPair &p) { return p.kind == kind; });
  return out;
}

const TrainingPair &PositiveAt(const std::vector<TrainingPair> &pairs, const std::string &a,
                               const std::string &b) {
  for (const TrainingPair &p : pairs) {
    if (p.kind == PairKind::kPositive && p.sentence_a.ends_with(a) && p.sentence_b.ends_with(b)) {
      return p;
    }
  }
  throw std::runtime_error("no positive " + a + " -> " + b);
}

TEST(CurvedPairs, ScoreByDistance) {
  Dialogue d = testing::MakeDialogue("x", 7);
  auto pairs = CurvedPairs(d, Config(PairMode::kCurved), RandomPool(kPool));
  EXPECT_DOUBLE_EQ(PositiveAt(pairs, "turn 0", "turn 1").score, 0.8);
  EXPECT_DOUBLE_EQ(PositiveAt(pairs, "turn 0", "turn 5").score, 0.0);
  EXPECT_EQ(PositiveAt(pairs, "turn 1", "turn 3").sentence_a, "[BEFORE] x turn 1");
  EXPECT_EQ(PositiveAt(pairs, "turn 1", "turn 3").sentence_b, "[AFTER] x turn 3");
  for (const TrainingPair &p : OfKind(pairs, PairKind::kSwapNegative)) EXPECT_EQ(p.score, 0.0);
  for (const TrainingPair &p : OfKind(pairs, PairKind::kRandomNegative)) EXPECT_EQ(p.score, 0.0);
}

TEST(CurvedPairs, TwoTurnDialogue) {
  auto pairs = CurvedPairs(testing::MakeDialogue("x", 2), Config(PairMode::kCurved), RandomPool(kPool));
  EXPECT_EQ(OfKind(pairs, PairKind::kPositive).size(), 1u);
  EXPECT_EQ(OfKind(pairs, PairKind::kSwapNegative).size(), 1u);
  EXPECT_EQ(OfKind(pairs, PairKind::kRandomNegative).size(), 2u);
  EXPECT_EQ(pairs[1].sentence_a, "[BEFORE] x turn 1");
  EXPECT_EQ(pairs[1].sentence_b, "[AFTER] x turn 0");
}

TEST(CurvedPairs, RandomNegativesAlternateSide) {
  auto pairs = CurvedPairs(testing::MakeDialogue("x", 2), Config(PairMode::kCurved), RandomPool(kPool));
  EXPECT_EQ(pairs[2].sentence_a, "[BEFORE] x turn 0");
  EXPECT_TRUE(pairs[2].sentence_b.starts_with("[AFTER] r"));
  EXPECT_TRUE(pairs[3].sentence_a.starts_with("[BEFORE] r"));
  EXPECT_EQ(pairs[3].sentence_b, "[AFTER] x turn 0");
}

TEST(CurvedPairs, EmptyPool) {
  std::vector<std::string> none;
  EXPECT_CCL_ERROR(CurvedPairs(testing::MakeDialogue("x", 2), Config(PairMode::kCurved), RandomPool(none)),
                   ErrorCode::kEmptyRandomPool);
}

TEST(CurvedPairs, ModeMismatch) {
  EXPECT_CCL_ERROR(CurvedPairs(testing::MakeDialogue("x", 2), Config(PairMode::kBinaryWindow),
                               RandomPool(kPool)),
                   ErrorCode::kPrecondition);
}

TEST(SpeakerPairs, ParityTokens) {
  auto pairs = SpeakerPairs(testing::MakeDialogue("x", 4), Config(PairMode::kCurvedSpeaker),
                            RandomPool(kPool));
  EXPECT_TRUE(PositiveAt(pairs, "turn 0", "turn 2").sentence_a.starts_with("[E] [BEFORE]"));
  EXPECT_TRUE(PositiveAt(pairs, "turn 0", "turn 1").sentence_a.starts_with("[O] [BEFORE]"));
  for (const TrainingPair &p : pairs) {
    EXPECT_TRUE(p.sentence_a.starts_with("[E] [BEFORE] ") || p.sentence_a.starts_with("[O] [BEFORE] "));
    EXPECT_TRUE(p.sentence_b.starts_with("[AFTER] "));
  }
}

TEST(SpeakerPairs, ComboFrequencies) {
  // One dialogue of 2 turns has a single (anchor, i) slot; a large
  // random-negative count gives 10^6 draws from the documented stream.
  PairGenConfig cfg = Config(PairMode::kCurvedSpeaker);
  cfg.random_negatives = 1000000;
  auto pairs = SpeakerPairs(testing::MakeDialogue("x", 2), cfg, RandomPool(kPool));
  std::array<double, 4> counts{};
  size_t total = 0;
  for (const TrainingPair &p : OfKind(pairs, PairKind::kRandomNegative)) {
    const bool even = p.sentence_a.starts_with("[E]");
    const bool window_first = p.sentence_a.ends_with("x turn 1");
    counts[(window_first ? 0 : 2) + (even ? 1 : 0)] += 1;
    ++total;
  }
  ASSERT_EQ(total, 1000000u);
  for (double c : counts) EXPECT_NEAR(c / total, 0.25, 0.01);
}

TEST(BinaryPairs, WindowScoresOne) {
  auto pairs = BinaryPairs(testing::MakeDialogue("x", 6), Config(PairMode::kBinaryWindow),
                           RandomPool(kPool));
  EXPECT_DOUBLE_EQ(PositiveAt(pairs, "turn 0", "turn 3").score, 1.0);
  for (const TrainingPair &p : OfKind(pairs, PairKind::kSwapNegative)) EXPECT_EQ(p.score, 0.0);
}

TEST(BinaryPairs, AdjacentOnFourTurns) {
  auto pairs = BinaryPairs(testing::MakeDialogue("x", 4), Config(PairMode::kBinaryAdjacent),
                           RandomPool(kPool));
  EXPECT_EQ(OfKind(pairs, PairKind::kPositive).size(), 3u);
  for (const TrainingPair &p : OfKind(pairs, PairKind::kSwapNegative)) EXPECT_EQ(p.score, 0.0);
}

// Every mode, many shapes, row-by-row against the brute-force tables.
TEST(PairOracle, RowByRowAllModes) {
  for (PairMode mode : {PairMode::kCurved, PairMode::kCurvedSpeaker, PairMode::kBinaryWindow,
                        PairMode::kBinaryAdjacent}) {
    for (int window : {1, 2, 5}) {
      for (int n = 1; n <= 9; ++n) {
        PairGenConfig cfg = Config(mode, window);
        cfg.random_negatives = 3;
        Dialogue d = testing::MakeDialogue("d" + std::to_string(n), n);
        auto got = DialoguePairs(d, cfg, RandomPool(kPool));
        auto want = oracle::EnumeratePairs(d, cfg, kPool);
        ASSERT_EQ(got, want) << PairModeName(mode) << " l=" << window << " n=" << n;
        std::vector<double> scores;
        for (const auto &p : OfKind(got, PairKind::kPositive)) scores.push_back(p.score);
        std::sort(scores.begin(), scores.end());
        EXPECT_EQ(scores, oracle::ExpectedPositiveScores(n, window, mode));
      }
    }
  }
}

TEST(CorpusPairs, PoolExcludesOwnDialogue) {
  Corpus c = testing::MakeCorpus({4, 3, 5});
  PairGenConfig cfg = Config(PairMode::kCurved);
  cfg.random_negatives = 6;
  auto owner = [](const std::string &s) {
    const std::string text = s.substr(s.find("] ") + 2);
    return text.substr(0, text.find(' '));
  };
  for (const TrainingPair &p : OfKind(CorpusPairs(c, cfg, 1), PairKind::kRandomNegative)) {
    EXPECT_NE(owner(p.sentence_a), owner(p.sentence_b)) << p.sentence_a << " | " << p.sentence_b;
  }
}

TEST(CorpusPairs, WorkerCountInvariant) {
  Corpus c = testing::MakeCorpus({4, 3, 5, 2, 8, 6});
  for (PairMode mode : {PairMode::kCurved, PairMode::kCurvedSpeaker}) {
    PairGenConfig cfg = Config(mode);
    EXPECT_EQ(CorpusPairs(c, cfg, 1), CorpusPairs(c, cfg, 4));
  }
}

TEST(CorpusPairs, DedupRemovesRepeats) {
  Corpus c;
  c.dialogues.push_back(testing::MakeDialogue("a", 3));
  c.dialogues.push_back(testing::MakeDialogue("b", 3));
  c.dialogues[1].turns = c.dialogues[0].turns;
  PairGenConfig cfg = Config(PairMode::kCurved);
  cfg.random_negatives = 0;
  EXPECT_EQ(CorpusPairs(c, cfg, 1).size(), 12u);
  cfg.dedup = true;
  EXPECT_EQ(CorpusPairs(c, cfg, 1).size(), 6u);
}

TEST(ExportPairs, RoundTrip) {
  testing::TempDir dir("pairs");
  auto pairs = CurvedPairs(testing::MakeDialogue("x", 2), Config(PairMode::kCurved), RandomPool(kPool));
  ASSERT_EQ(pairs.size(), 4u);
  const std::string path = dir.File("pairs.jsonl");
  EXPECT_EQ(ExportPairs(pairs, path), 4u);
  const std::string raw = ReadFile(path);
  EXPECT_EQ(std::count(raw.begin(), raw.end(), '\n'), 4);
  EXPECT_EQ(ParsePairsJsonl(raw), pairs);
}

TEST(ExportPairs, EmptyListEmptyFile) {
  testing::TempDir dir("pairs");
  const std::string path = dir.File("empty.jsonl");
  EXPECT_EQ(ExportPairs({}, path), 0u);
  EXPECT_TRUE(FileExists(path));
  EXPECT_EQ(ReadFile(path), "");
}

TEST(ExportPairs, HeaderLineSkippedOnRead) {
  testing::TempDir dir("pairs");
  auto pairs = CurvedPairs(testing::MakeDialogue("x", 3), Config(PairMode::kCurved), RandomPool(kPool));
  const std::string path = dir.File("p.jsonl");
  ExportPairs(pairs, path, R"({"_meta":{"seed":42}})");
  EXPECT_EQ(ParsePairsJsonl(ReadFile(path)), pairs);
}

TEST(ExportPairs, SameSeedByteIdentical) {
  testing::TempDir dir("pairs");
  Corpus c = testing::MakeCorpus({5, 6, 7});
  PairGenConfig cfg = Config(PairMode::kCurvedSpeaker);
  ExportPairs(CorpusPairs(c, cfg, 1), dir.File("a.jsonl"));
  ExportPairs(CorpusPairs(c, cfg, 3), dir.File("b.jsonl"));
  EXPECT_EQ(ReadFile(dir.File("a.jsonl")), ReadFile(dir.File("b.jsonl")));
  cfg.seed = 43;
  ExportPairs(CorpusPairs(c, cfg, 1), dir.File("c.jsonl"));
  EXPECT_NE(ReadFile(dir.File("a.jsonl")), ReadFile(dir.File("c.jsonl")));
}

TEST(PairMode, NamesRoundTrip) {
  for (const char *name : {"curved", "speaker", "ab5", "ab2"}) {
    EXPECT_EQ(PairModeName(ParsePairMode(name)), name);
  }
  EXPECT_CCL_ERROR(ParsePairMode("nope"), ErrorCode::kPrecondition);
}

}  // namespace
}  // namespace ccl
