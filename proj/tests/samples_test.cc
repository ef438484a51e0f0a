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

#include "ccl/samples.h"

#include <gtest/gtest.h>

#include "test_util.h"

namespace ccl {
namespace {

TEST(StpSamples, LengthArithmetic) {
  Corpus c = testing::MakeCorpus({4, 6, 9});
  StpBuild b = BuildStpSamples(c, 2, 3, nullptr);
  ASSERT_EQ(b.samples.size(), 2u);
  EXPECT_EQ(b.samples[0].dialogue_id, "d1");
  EXPECT_EQ(b.samples[0].history.size(), 2u);
  EXPECT_EQ(b.samples[0].true_utterance.text, "d1 turn 2");
  EXPECT_EQ(b.samples[0].goal.text, "d1 turn 5");
  EXPECT_CCL_ERROR(BuildStpSamples(c, 0, 1, nullptr), ErrorCode::kPrecondition);
}

TEST(StpSamples, CandidatesJoined) {
  Corpus c = testing::MakeCorpus({5, 5, 5});
  CandidateIndex index = ParseCandidatesJsonl(
      "{\"_meta\":{}}\n"
      "{\"dialogue_id\":\"d0\",\"candidates\":[\"x\",\"d0 turn 1\",\" y \",\"\"],"
      "\"generator\":{\"name\":\"g\",\"p\":0.8,\"t\":0.8}}\n"
      "{\"dialogue_id\":\"d1\",\"h_l\":2,\"candidates\":[\"z\"]}\n"
      "{\"dialogue_id\":\"d1\",\"candidates\":[\"w\"]}\n");
  EXPECT_EQ(index.generator["p"], 0.8);
  StpBuild b = BuildStpSamples(c, 1, 1, &index);
  ASSERT_EQ(b.samples.size(), 2u);
  EXPECT_EQ(b.samples[0].candidates, (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(b.removed_true_duplicates, 1u);
  EXPECT_EQ(b.samples[1].candidates, (std::vector<std::string>{"w"}));
  EXPECT_EQ(b.skipped_no_candidates, 1u);
  StpBuild at2 = BuildStpSamples(c, 2, 1, &index);
  EXPECT_EQ(at2.samples[1].candidates, (std::vector<std::string>{"z"}));
}

TEST(StpSamples, MissingCandidateFile) {
  EXPECT_CCL_ERROR(LoadCandidates("/nonexistent/cands.jsonl"), ErrorCode::kCandidateFileMissing);
}

TEST(LtpSamples, Positions) {
  Corpus c = testing::MakeCorpus({6, 7, 12});
  auto s = BuildLtpSamples(c, 2, 2, 0);
  ASSERT_EQ(s.size(), 2u);
  EXPECT_EQ(s[0].goals[0].text, "d1 turn 2");
  EXPECT_EQ(s[0].goals[1].text, "d1 turn 4");
  EXPECT_EQ(s[0].goals[2].text, "d1 turn 6");
  auto far = BuildLtpSamples(c, 2, 2, 3);
  ASSERT_EQ(far.size(), 1u);
  EXPECT_EQ(far[0].goals[0].text, "d2 turn 5");
  EXPECT_CCL_ERROR(BuildLtpSamples(c, 2, 1, 0), ErrorCode::kPrecondition);
}

TEST(NextSamples, PoolHoldsEveryTrueTurnOnce) {
  Corpus c = testing::MakeCorpus({3, 4, 5, 2});
  NextSampleSet set = BuildNextSamples(c, 2);
  ASSERT_EQ(set.pool.size(), 3u);
  ASSERT_EQ(set.samples.size(), 3u);
  for (const NextSample &s : set.samples) {
    int found = 0;
    for (const PoolEntry &p : set.pool) {
      if (p.id == s.dialogue_id) {
        ++found;
        EXPECT_EQ(p.text, s.dialogue_id + " turn 2");
      }
    }
    EXPECT_EQ(found, 1);
  }
  EXPECT_LT(BuildNextSamples(c, 4).samples.size(), set.samples.size());
}

TEST(EncodingCost, ArithmeticSeries) {
  EncodingCost cost = EncodingCostReport(testing::MakeCorpus({11}));
  EXPECT_EQ(cost.context_representations, 10u);
  EXPECT_EQ(cost.utterances_encoded_context_mode, 55u);
  EXPECT_EQ(cost.utterances_encoded_relativistic, 10u);
  EXPECT_DOUBLE_EQ(cost.factor, 5.5);
}

TEST(EncodingCost, DepthOneIsUnitFactor) {
  EXPECT_DOUBLE_EQ(EncodingCostReport(testing::MakeCorpus({5, 9, 3}), 1).factor, 1.0);
}

TEST(SampleFiles, RoundTrips) {
  Corpus c = testing::MakeCorpus({8, 9, 12});
  StpBuild stp = BuildStpSamples(c, 2, 2, nullptr);
  stp.samples[0].candidates = {"a", "b"};
  auto stp_back = ParseStpSamples(StpSamplesToJsonl(stp.samples));
  ASSERT_EQ(stp_back.size(), stp.samples.size());
  EXPECT_EQ(stp_back[0].candidates, stp.samples[0].candidates);
  EXPECT_EQ(stp_back[1].goal, stp.samples[1].goal);

  auto ltp = BuildLtpSamples(c, 1, 3, 1);
  auto ltp_back = ParseLtpSamples(LtpSamplesToJsonl(ltp));
  ASSERT_EQ(ltp_back.size(), ltp.size());
  EXPECT_EQ(ltp_back[0].goals, ltp[0].goals);
  EXPECT_EQ(ltp_back[0].first_goal_in_distance, 1);

  std::vector<NextSampleSet> sets = {BuildNextSamples(c, 1), BuildNextSamples(c, 8)};
  auto next_back = ParseNextSets(NextSetsToJsonl(sets));
  ASSERT_EQ(next_back.size(), 2u);
  EXPECT_EQ(next_back[1].history_length, 8);
  EXPECT_EQ(next_back[1].pool.size(), 2u);
  EXPECT_EQ(next_back[0].samples[2].history, sets[0].samples[2].history);
}

TEST(SampleFiles, Malformed) {
  EXPECT_CCL_ERROR(ParseStpSamples("{\"dialogue_id\":\"x\"}\n"), ErrorCode::kSchemaError);
  EXPECT_CCL_ERROR(ParseLtpSamples("not json\n"), ErrorCode::kParseError);
}

}  // namespace
}  // namespace ccl
