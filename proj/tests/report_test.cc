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

#include "ccl/report.h"

#include <gtest/gtest.h>

#include "test_util.h"

namespace ccl {
namespace {

TEST(Summarize, HitsAndCells) {
  std::vector<RankOutcome> outs = {
      {"h_l=1,g_d=1", 1, 1, 0, false, -1, 10},
      {"h_l=1,g_d=1", 1, 7, 0, false, -1, 10},
      {"h_l=2,g_d=2", 2, 3, 0, false, -1, 10},
      {"h_l=2,g_d=2", 2, 12, 0, false, -1, 12},
  };
  std::vector<int> ks = {5, 10};
  RankingReport r = Summarize("stp", outs, ks, OutcomeKind::kPlain);
  EXPECT_EQ(r.n, 4u);
  EXPECT_DOUBLE_EQ(r.hits_at[5], 0.5);
  EXPECT_DOUBLE_EQ(r.hits_at[10], 0.75);
  EXPECT_DOUBLE_EQ(r.average_rank, 23.0 / 4);
  EXPECT_EQ(*r.pool_size, 12u);
  ASSERT_EQ(r.breakdown.size(), 2u);
  EXPECT_EQ(r.breakdown[0].first, "h_l=1,g_d=1");
  EXPECT_DOUBLE_EQ(r.breakdown[0].second.average_rank, 4.0);
  ASSERT_EQ(r.by_parity.size(), 2u);
  EXPECT_EQ(r.by_parity[0].first, "even");
  EXPECT_EQ(r.by_parity[0].second.n, 2u);
}

TEST(Summarize, LtpPanels) {
  std::vector<RankOutcome> outs = {{"c", -1, 2, 1, true, -1, 6}, {"c", -1, 6, 5, false, -1, 6}};
  std::vector<int> ks = {1, 2, 3, 4};
  RankingReport r = Summarize("ltp-iec", outs, ks, OutcomeKind::kLtpPanels);
  EXPECT_DOUBLE_EQ(r.hits_at[1], 0.5);
  EXPECT_DOUBLE_EQ(r.hits_at[4], 0.5);
  EXPECT_DOUBLE_EQ(*r.reverse_hits_at_1, 0.5);
  EXPECT_DOUBLE_EQ(r.average_rank, 4.0);
  EXPECT_FALSE(r.mean_normalized_rank.has_value());
}

TEST(Summarize, Empty) {
  std::vector<int> ks = {1};
  RankingReport r = Summarize("x", {}, ks, OutcomeKind::kNormalized);
  EXPECT_EQ(r.n, 0u);
  EXPECT_EQ(r.hits_at[1], 0.0);
  EXPECT_TRUE(r.breakdown.empty());
}

TEST(ReportJson, RoundTrip) {
  std::vector<RankOutcome> outs = {{"h_l=1", 1, 1, 0, false, 0.0, 5}, {"h_l=2", 2, 4, 0, false, 0.75, 5}};
  std::vector<int> ks = {1, 5, 10};
  RankingReport r = Summarize("next-full", outs, ks, OutcomeKind::kNormalized);
  nlohmann::json j = ReportToJson(r);
  EXPECT_EQ(ReportToJson(ReportFromJson(j)), j);
  EXPECT_DOUBLE_EQ(j["mean_normalized_rank"].get<double>(), 0.375);
  EXPECT_CCL_ERROR(ReportFromJson(nlohmann::json{{"task", "x"}}), ErrorCode::kFormatError);
}

}  // namespace
}  // namespace ccl
