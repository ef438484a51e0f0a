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

#include "ccl/evaluate.h"

#include <algorithm>
#include <memory>

#include "ccl/context_cache.h"
#include "ccl/error.h"
#include "ccl/util.h"

namespace ccl {

LtpMethod ParseLtpMethod(std::string_view name) {
  if (name == "iec") return LtpMethod::kIec;
  if (name == "iec-cu" || name == "iec_cu") return LtpMethod::kIecCurving;
  if (name == "gc") return LtpMethod::kGreedyCurving;
  throw Error(ErrorCode::kPrecondition, "unknown method \"" + std::string(name) + "\"");
}

std::string_view LtpMethodName(LtpMethod m) {
  switch (m) {
    case LtpMethod::kIec: return "iec";
    case LtpMethod::kIecCurving: return "iec-cu";
    case LtpMethod::kGreedyCurving: return "gc";
  }
  return "iec";
}

NextVariant ParseNextVariant(std::string_view name) {
  if (name == "full") return NextVariant::kFullHistory;
  if (name == "last") return NextVariant::kLastUtterance;
  throw Error(ErrorCode::kPrecondition, "unknown variant \"" + std::string(name) + "\"");
}

std::string_view NextVariantName(NextVariant v) {
  return v == NextVariant::kFullHistory ? "full" : "last";
}

double NormalizedRank(size_t rank, size_t pool) {
  if (pool <= 1) return 0.0;
  return static_cast<double>(rank - 1) / static_cast<double>(pool - 1);
}

namespace {

EncodingMode BeforeMode(bool speaker_mode, long distance) {
  return speaker_mode ? EncodingMode::BeforeForDistance(distance) : EncodingMode::Before();
}

// Turn position of the goal that a candidate order places at `position`.
long LtpGoalPosition(const LtpSample &s, int position) {
  return s.history_length + s.first_goal_in_distance + position * s.goal_distance;
}

int LtpHistoryPositions(LtpMethod method) {
  switch (method) {
    case LtpMethod::kIec: return 0;
    case LtpMethod::kIecCurving: return 3;
    case LtpMethod::kGreedyCurving: return 1;
  }
  return 0;
}

std::vector<Vec> LtpHistory(const LtpSample &s, int position, const EmbeddingStore &store,
                            bool speaker_mode) {
  std::vector<Vec> out;
  for (const Utterance &u : s.history) {
    out.push_back(store.Row(u.text, BeforeMode(speaker_mode, LtpGoalPosition(s, position) - u.index)));
  }
  return out;
}

std::array<std::string, 3> GoalIds(const LtpSample &s) {
  std::array<std::string, 3> ids = {s.goals[0].text, s.goals[1].text, s.goals[2].text};
  if (ids[0] == ids[1] || ids[0] == ids[2] || ids[1] == ids[2]) {
    for (int k = 0; k < 3; ++k) ids[k] += "#" + std::to_string(k);
  }
  return ids;
}

std::vector<Vec> NextHistory(const NextSampleSet &set, const NextSample &s, NextVariant variant,
                             const EmbeddingStore &store, bool speaker_mode) {
  std::vector<Vec> out;
  size_t first = variant == NextVariant::kLastUtterance && !s.history.empty() ? s.history.size() - 1 : 0;
  for (size_t j = first; j < s.history.size(); ++j) {
    const Utterance &u = s.history[j];
    out.push_back(store.Row(u.text, BeforeMode(speaker_mode, set.history_length - u.index)));
  }
  return out;
}

std::string Cell(const StpSample &s) {
  return "h_l=" + std::to_string(s.history_length) + ",g_d=" + std::to_string(s.goal_distance);
}

std::string Cell(const LtpSample &s) {
  return "h_l=" + std::to_string(s.history_length) + ",g_d=" + std::to_string(s.goal_distance) +
         ",fgid=" + std::to_string(s.first_goal_in_distance);
}

std::string Cell(const NextSampleSet &set) { return "h_l=" + std::to_string(set.history_length); }

}  // namespace

std::vector<EmbeddingKey> StpKeys(const StpSample &s, bool speaker_mode) {
  const EncodingMode before = BeforeMode(speaker_mode, s.goal_distance);
  std::vector<EmbeddingKey> keys;
  keys.push_back({s.true_utterance.text, before});
  for (const std::string &c : s.candidates) keys.push_back({c, before});
  keys.push_back({s.goal.text, EncodingMode::After()});
  return keys;
}

std::vector<EmbeddingKey> LtpKeys(const LtpSample &s, LtpMethod method, bool speaker_mode) {
  std::vector<EmbeddingKey> keys;
  for (const Utterance &g : s.goals) {
    keys.push_back({g.text, BeforeMode(speaker_mode, s.goal_distance)});
    keys.push_back({g.text, EncodingMode::After()});
  }
  for (int p = 0; p < LtpHistoryPositions(method); ++p) {
    for (const Utterance &u : s.history) {
      keys.push_back({u.text, BeforeMode(speaker_mode, LtpGoalPosition(s, p) - u.index)});
    }
  }
  return keys;
}

std::vector<EmbeddingKey> NextKeys(const NextSampleSet &set, NextVariant variant,
                                   bool speaker_mode) {
  std::vector<EmbeddingKey> keys;
  for (const PoolEntry &p : set.pool) keys.push_back({p.text, EncodingMode::After()});
  for (const NextSample &s : set.samples) {
    size_t first =
        variant == NextVariant::kLastUtterance && !s.history.empty() ? s.history.size() - 1 : 0;
    for (size_t j = first; j < s.history.size(); ++j) {
      const Utterance &u = s.history[j];
      keys.push_back({u.text, BeforeMode(speaker_mode, set.history_length - u.index)});
    }
  }
  return keys;
}

RankOutcome EvalStpSample(const StpSample &s, const EmbeddingStore &store, bool speaker_mode) {
  const EncodingMode before = BeforeMode(speaker_mode, s.goal_distance);
  std::vector<Candidate> cands;
  cands.reserve(s.candidates.size() + 1);
  cands.push_back({s.true_utterance.text, store.Row(s.true_utterance.text, before)});
  for (const std::string &c : s.candidates) {
    if (c == s.true_utterance.text) continue;
    cands.push_back({c, store.Row(c, before)});
  }
  const std::vector<RankedItem> ranked = StpRank(cands, store.Row(s.goal.text, EncodingMode::After()));
  auto it = std::find_if(ranked.begin(), ranked.end(),
                         [&](const RankedItem &r) { return r.id == s.true_utterance.text; });
  RankOutcome o;
  o.cell = Cell(s);
  o.parity_distance = s.goal_distance;
  o.rank = static_cast<size_t>(it - ranked.begin()) + 1;
  o.pool_size = cands.size();
  return o;
}

RankingReport EvalStp(std::span<const StpSample> samples, const EmbeddingStore &store,
                      const EvalOptions &opts) {
  std::vector<RankOutcome> outcomes(samples.size());
  ParallelFor(samples.size(), opts.workers,
              [&](size_t k) { outcomes[k] = EvalStpSample(samples[k], store, opts.speaker_mode); });
  return Summarize("stp", outcomes, kStpHits, OutcomeKind::kPlain);
}

RankOutcome EvalLtpSample(const LtpSample &s, const EmbeddingStore &store, LtpMethod method,
                          const EvalOptions &opts) {
  const std::array<std::string, 3> ids = GoalIds(s);
  std::vector<Goal> goal_list;
  for (int k = 0; k < 3; ++k) {
    Vec before = store.Row(s.goals[k].text, BeforeMode(opts.speaker_mode, s.goal_distance));
    Vec after = store.Row(s.goals[k].text, EncodingMode::After());
    goal_list.push_back({ids[k], s.goals[k].text, {before.begin(), before.end()},
                         {after.begin(), after.end()}});
  }
  const GoalSet goals(std::move(goal_list));

  RankOutcome o;
  o.cell = Cell(s);
  if (method == LtpMethod::kGreedyCurving) {
    const std::vector<Vec> history = LtpHistory(s, 0, store, opts.speaker_mode);
    std::vector<RankedItem> items;
    for (const Goal &g : goals.goals()) {
      items.push_back({g.id, EntailmentStrength(history, g.after, opts.aggregation)});
    }
    SortRanking(items);
    auto it = std::find_if(items.begin(), items.end(),
                           [&](const RankedItem &r) { return r.id == ids[0]; });
    o.rank = static_cast<size_t>(it - items.begin()) + 1;
    o.partial_rank = o.rank;
    o.pool_size = 3;
    return o;
  }

  std::vector<ScoredOrder> ranked;
  if (method == LtpMethod::kIec) {
    ranked = RankOrdersIec(goals);
  } else {
    std::array<std::vector<Vec>, 3> hist;
    for (int p = 0; p < 3; ++p) hist[p] = LtpHistory(s, p, store, opts.speaker_mode);
    const PositionalHistory positional = {hist[0], hist[1], hist[2]};
    std::array<std::string, 3> perm = ids;
    std::sort(perm.begin(), perm.end());
    do {
      ScoredOrder so;
      so.order.assign(perm.begin(), perm.end());
      so.score = ChainCurvingScore(perm[0], perm[1], perm[2], goals, positional, opts.weights);
      ranked.push_back(std::move(so));
    } while (std::next_permutation(perm.begin(), perm.end()));
    std::stable_sort(ranked.begin(), ranked.end(),
                     [](const ScoredOrder &a, const ScoredOrder &b) { return a.score > b.score; });
  }

  const std::vector<std::string> truth = {ids[0], ids[1], ids[2]};
  const std::vector<std::string> reverse = {ids[2], ids[1], ids[0]};
  size_t partial = 1;
  bool reverse_seen = false;
  for (size_t k = 0; k < ranked.size(); ++k) {
    if (ranked[k].order == truth) {
      o.rank = k + 1;
      break;
    }
    if (ranked[k].order == reverse) {
      reverse_seen = true;
    } else {
      ++partial;
    }
  }
  o.partial_rank = partial;
  o.beats_reverse = !reverse_seen;
  o.pool_size = ranked.size();
  return o;
}

RankingReport EvalLtp(std::span<const LtpSample> samples, const EmbeddingStore &store,
                      LtpMethod method, const EvalOptions &opts) {
  std::vector<RankOutcome> outcomes(samples.size());
  ParallelFor(samples.size(), opts.workers,
              [&](size_t k) { outcomes[k] = EvalLtpSample(samples[k], store, method, opts); });
  const std::string task = "ltp-" + std::string(LtpMethodName(method));
  if (method == LtpMethod::kGreedyCurving) {
    return Summarize(task, outcomes, kLtpGreedyHits, OutcomeKind::kPlain);
  }
  return Summarize(task, outcomes, kLtpChainHits, OutcomeKind::kLtpPanels);
}

std::vector<RankOutcome> EvalNextSet(const NextSampleSet &set, const EmbeddingStore &store,
                                     NextVariant variant, const EvalOptions &opts) {
  std::vector<Candidate> pool;
  pool.reserve(set.pool.size());
  for (const PoolEntry &p : set.pool) pool.push_back({p.id, store.Row(p.text, EncodingMode::After())});
  auto matrix = std::make_shared<const CandidateMatrix>(pool);

  std::vector<RankOutcome> outcomes(set.samples.size());
  ParallelFor(set.samples.size(), opts.workers, [&](size_t k) {
    const NextSample &s = set.samples[k];
    if (matrix->Find(s.dialogue_id) < 0) {
      throw Error(ErrorCode::kFormatError, "pool lacks the true next turn of " + s.dialogue_id);
    }
    ContextCache cache(matrix);
    for (Vec h : NextHistory(set, s, variant, store, opts.speaker_mode)) cache.Push(h);
    RankOutcome &o = outcomes[k];
    o.cell = Cell(set);
    o.rank = cache.RankOf(s.dialogue_id);
    o.pool_size = set.pool.size();
    o.normalized_rank = NormalizedRank(o.rank, o.pool_size);
  });
  return outcomes;
}

RankingReport EvalNext(std::span<const NextSampleSet> sets, const EmbeddingStore &store,
                       NextVariant variant, const EvalOptions &opts) {
  std::vector<RankOutcome> outcomes;
  for (const NextSampleSet &set : sets) {
    std::vector<RankOutcome> part = EvalNextSet(set, store, variant, opts);
    outcomes.insert(outcomes.end(), part.begin(), part.end());
  }
  return Summarize("next-" + std::string(NextVariantName(variant)), outcomes, kNextHits,
                   OutcomeKind::kNormalized);
}

RankingReport EvalNextBm25(std::span<const NextSampleSet> sets, Bm25Params params, int workers) {
  std::vector<RankOutcome> outcomes;
  for (const NextSampleSet &set : sets) {
    std::vector<std::string> docs;
    for (const PoolEntry &p : set.pool) docs.push_back(p.text);
    const Bm25Index index(docs, params);
    std::vector<RankOutcome> part(set.samples.size());
    ParallelFor(set.samples.size(), workers, [&](size_t k) {
      const NextSample &s = set.samples[k];
      std::vector<std::string> texts;
      for (const Utterance &u : s.history) texts.push_back(u.text);
      const std::vector<double> scores = index.Scores(Bm25Tokens(texts));
      auto mine_it = std::find_if(set.pool.begin(), set.pool.end(),
                                  [&](const PoolEntry &p) { return p.id == s.dialogue_id; });
      if (mine_it == set.pool.end()) {
        throw Error(ErrorCode::kFormatError, "pool lacks the true next turn of " + s.dialogue_id);
      }
      const size_t mine = static_cast<size_t>(mine_it - set.pool.begin());
      size_t rank = 1;
      for (size_t d = 0; d < scores.size(); ++d) {
        if (scores[d] > scores[mine] ||
            (scores[d] == scores[mine] && set.pool[d].id < set.pool[mine].id)) {
          ++rank;
        }
      }
      part[k].cell = Cell(set);
      part[k].rank = rank;
      part[k].pool_size = set.pool.size();
      part[k].normalized_rank = NormalizedRank(rank, part[k].pool_size);
    });
    outcomes.insert(outcomes.end(), part.begin(), part.end());
  }
  return Summarize("next-bm25", outcomes, kNextHits, OutcomeKind::kNormalized);
}

}  // namespace ccl
