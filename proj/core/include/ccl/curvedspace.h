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

#ifndef CCL_CURVEDSPACE_H_
#define CCL_CURVEDSPACE_H_

#include <array>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ccl/embedstore.h"

namespace ccl {

// Cosine in float64 with explicit norms, so float32 rounding in stored
// unit vectors stays out of the scores. 0 when either side is zero.
// Throws Error(kDimMismatch).
double Cosine(Vec a, Vec b);

enum class HistoryAggregation { kSum, kMean };

// Sum over the history of cosine(before(u_i), after(candidate)). kMean
// divides by the history length. Throws Error(kEmptyHistory).
double EntailmentStrength(std::span<const Vec> history, Vec candidate,
                          HistoryAggregation agg = HistoryAggregation::kSum);

struct Goal {
  std::string id;
  std::string text;
  std::vector<float> before;
  std::vector<float> after;
};

// Goals with both encodings. Ids must be unique.
class GoalSet {
 public:
  GoalSet() = default;
  explicit GoalSet(std::vector<Goal> goals);

  size_t size() const { return goals_.size(); }
  const Goal &at(size_t k) const { return goals_[k]; }
  const std::vector<Goal> &goals() const { return goals_; }
  // Throws Error(kNotAPermutation) for an unknown id.
  size_t IndexOf(const std::string &id) const;

 private:
  std::vector<Goal> goals_;
};

// Sum of cosine(before(g_i), after(g_{i+1})) along `order`, which must be a
// permutation of all goal ids with at least two entries.
double ChainScore(std::span<const std::string> order, const GoalSet &goals);

struct ScoredOrder {
  std::vector<std::string> order;
  double score = 0.0;
};

inline constexpr size_t kDefaultMaxChainGoals = 8;

// Every permutation scored by ChainScore, best first; ties go to the
// lexicographically smaller id sequence. Needs 2 <= |goals| <= max_goals,
// else Error(kTooManyGoals) / Error(kPrecondition).
std::vector<ScoredOrder> RankOrdersIec(const GoalSet &goals,
                                       size_t max_goals = kDefaultMaxChainGoals);

// Weights on the entailment strength of the goals in first, second and
// third position of a candidate order.
struct CurvingWeights {
  double first = 1.0;
  double second = -0.5;
  double third = -1.0;
};

using PositionalHistory = std::array<std::span<const Vec>, 3>;

// Chain score of (g1, g2, g3) plus the weighted history curving terms.
// `history_for_position[p]` is the history used for the goal placed at
// position p; pass the same history three times when no speaker tokens are
// involved.
double ChainCurvingScore(const std::string &g1, const std::string &g2, const std::string &g3,
                         const GoalSet &goals, std::span<const Vec> history,
                         const CurvingWeights &weights = {});
double ChainCurvingScore(const std::string &g1, const std::string &g2, const std::string &g3,
                         const GoalSet &goals, const PositionalHistory &history_for_position,
                         const CurvingWeights &weights = {});

// Goal with the largest entailment strength given the history; ties go to
// the smaller id.
std::string GreedyCurving(const GoalSet &goals, std::span<const Vec> history);

struct RankedItem {
  std::string id;
  double score = 0.0;

  bool operator==(const RankedItem &) const = default;
};

struct Candidate {
  std::string id;
  Vec vector;
};

// Candidates (before side) ordered by cosine to the goal (after side),
// best first, ties by id.
std::vector<RankedItem> StpRank(std::span<const Candidate> candidates, Vec goal_after);

// Sorts best first with id tie-break. Shared by every ranking in the
// library.
void SortRanking(std::vector<RankedItem> &items);

}  // namespace ccl

#endif  // CCL_CURVEDSPACE_H_
