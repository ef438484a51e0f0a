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

#include "ccl/curvedspace.h"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <unordered_map>

#include "ccl/error.h"

namespace ccl {

namespace {

void CheckDims(Vec a, Vec b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::kDimMismatch,
                std::to_string(a.size()) + " vs " + std::to_string(b.size()));
  }
}

void CheckDistinct(const std::string &g1, const std::string &g2, const std::string &g3) {
  if (g1 == g2 || g1 == g3 || g2 == g3) {
    throw Error(ErrorCode::kNotAPermutation, "goal ids repeat");
  }
}

}  // namespace

double Cosine(Vec a, Vec b) {
  CheckDims(a, b);
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (size_t k = 0; k < a.size(); ++k) {
    dot += static_cast<double>(a[k]) * b[k];
    na += static_cast<double>(a[k]) * a[k];
    nb += static_cast<double>(b[k]) * b[k];
  }
  if (na == 0.0 || nb == 0.0) return 0.0;
  return dot / std::sqrt(na * nb);
}

double EntailmentStrength(std::span<const Vec> history, Vec candidate, HistoryAggregation agg) {
  if (history.empty()) throw Error(ErrorCode::kEmptyHistory, "no history utterances");
  double s = 0.0;
  for (Vec h : history) s += Cosine(h, candidate);
  if (agg == HistoryAggregation::kMean) s /= static_cast<double>(history.size());
  return s;
}

GoalSet::GoalSet(std::vector<Goal> goals) : goals_(std::move(goals)) {
  for (size_t i = 0; i < goals_.size(); ++i) {
    if (goals_[i].before.empty() || goals_[i].after.empty()) {
      throw Error(ErrorCode::kPrecondition, "goal " + goals_[i].id + " lacks an encoding");
    }
    for (size_t j = 0; j < i; ++j) {
      if (goals_[i].id == goals_[j].id) {
        throw Error(ErrorCode::kPrecondition, "duplicate goal id " + goals_[i].id);
      }
    }
  }
}

size_t GoalSet::IndexOf(const std::string &id) const {
  for (size_t k = 0; k < goals_.size(); ++k) {
    if (goals_[k].id == id) return k;
  }
  throw Error(ErrorCode::kNotAPermutation, "unknown goal id " + id);
}

double ChainScore(std::span<const std::string> order, const GoalSet &goals) {
  if (order.size() != goals.size() || order.size() < 2) {
    throw Error(ErrorCode::kNotAPermutation, "order must list every goal once");
  }
  std::vector<size_t> idx(order.size());
  std::vector<bool> used(goals.size(), false);
  for (size_t k = 0; k < order.size(); ++k) {
    idx[k] = goals.IndexOf(order[k]);
    if (used[idx[k]]) throw Error(ErrorCode::kNotAPermutation, "repeated id " + order[k]);
    used[idx[k]] = true;
  }
  double s = 0.0;
  for (size_t k = 0; k + 1 < idx.size(); ++k) {
    s += Cosine(goals.at(idx[k]).before, goals.at(idx[k + 1]).after);
  }
  return s;
}

std::vector<ScoredOrder> RankOrdersIec(const GoalSet &goals, size_t max_goals) {
  const size_t n = goals.size();
  if (n > max_goals) {
    throw Error(ErrorCode::kTooManyGoals,
                std::to_string(n) + " goals, cap is " + std::to_string(max_goals));
  }
  if (n < 2) throw Error(ErrorCode::kPrecondition, "need at least 2 goals");

  // Pairwise link scores once; each permutation is then n - 1 lookups.
  std::vector<double> link(n * n);
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) link[i * n + j] = Cosine(goals.at(i).before, goals.at(j).after);
  }
  // Enumerate in lexicographic id order so a stable sort keeps that order
  // among ties.
  std::vector<size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  std::sort(perm.begin(), perm.end(),
            [&](size_t a, size_t b) { return goals.at(a).id < goals.at(b).id; });
  std::vector<ScoredOrder> out;
  do {
    ScoredOrder so;
    so.order.reserve(n);
    for (size_t k = 0; k < n; ++k) {
      so.order.push_back(goals.at(perm[k]).id);
      if (k + 1 < n) so.score += link[perm[k] * n + perm[k + 1]];
    }
    out.push_back(std::move(so));
  } while (std::next_permutation(perm.begin(), perm.end(), [&](size_t a, size_t b) {
    return goals.at(a).id < goals.at(b).id;
  }));
  std::stable_sort(out.begin(), out.end(),
                   [](const ScoredOrder &a, const ScoredOrder &b) { return a.score > b.score; });
  return out;
}

double ChainCurvingScore(const std::string &g1, const std::string &g2, const std::string &g3,
                         const GoalSet &goals, std::span<const Vec> history,
                         const CurvingWeights &weights) {
  return ChainCurvingScore(g1, g2, g3, goals, PositionalHistory{history, history, history},
                           weights);
}

double ChainCurvingScore(const std::string &g1, const std::string &g2, const std::string &g3,
                         const GoalSet &goals, const PositionalHistory &history_for_position,
                         const CurvingWeights &weights) {
  CheckDistinct(g1, g2, g3);
  if (goals.size() != 3) throw Error(ErrorCode::kNotAPermutation, "curving needs exactly 3 goals");
  const std::string order[3] = {g1, g2, g3};
  const double chain = ChainScore(order, goals);
  const double pe1 = EntailmentStrength(history_for_position[0], goals.at(goals.IndexOf(g1)).after);
  const double pe2 = EntailmentStrength(history_for_position[1], goals.at(goals.IndexOf(g2)).after);
  const double pe3 = EntailmentStrength(history_for_position[2], goals.at(goals.IndexOf(g3)).after);
  return chain + weights.first * pe1 + weights.second * pe2 + weights.third * pe3;
}

std::string GreedyCurving(const GoalSet &goals, std::span<const Vec> history) {
  if (history.empty()) throw Error(ErrorCode::kEmptyHistory, "no history utterances");
  if (goals.size() == 0) throw Error(ErrorCode::kPrecondition, "no goals");
  std::vector<RankedItem> items;
  for (const Goal &g : goals.goals()) items.push_back({g.id, EntailmentStrength(history, g.after)});
  SortRanking(items);
  return items.front().id;
}

void SortRanking(std::vector<RankedItem> &items) {
  std::sort(items.begin(), items.end(), [](const RankedItem &a, const RankedItem &b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  });
}

std::vector<RankedItem> StpRank(std::span<const Candidate> candidates, Vec goal_after) {
  std::vector<RankedItem> out;
  out.reserve(candidates.size());
  for (const Candidate &c : candidates) out.push_back({c.id, Cosine(c.vector, goal_after)});
  SortRanking(out);
  return out;
}

}  // namespace ccl
