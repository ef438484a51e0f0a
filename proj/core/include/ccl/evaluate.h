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

#ifndef CCL_EVALUATE_H_
#define CCL_EVALUATE_H_

#include <array>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccl/bm25.h"
#include "ccl/curvedspace.h"
#include "ccl/embedstore.h"
#include "ccl/report.h"
#include "ccl/samples.h"

namespace ccl {

inline constexpr std::string_view kStpProtocol =
    "stp/1: true utterance ranked among true + candidates by cosine(before, goal after)";
inline constexpr std::string_view kLtpProtocol =
    "ltp/1: hits_at over true + 4 partially ordered permutations; reverse panel pairwise "
    "true vs reverse; average_rank of true among all 6 (greedy curving: among 3 goals)";
inline constexpr std::string_view kNextProtocol =
    "next/1: normalized rank (rank - 1) / (pool - 1) within the same-depth pool";

enum class LtpMethod { kIec, kIecCurving, kGreedyCurving };
// "iec", "iec-cu", "gc".
LtpMethod ParseLtpMethod(std::string_view name);
std::string_view LtpMethodName(LtpMethod m);

enum class NextVariant { kFullHistory, kLastUtterance };
// "full", "last".
NextVariant ParseNextVariant(std::string_view name);
std::string_view NextVariantName(NextVariant v);

struct EvalOptions {
  bool speaker_mode = false;
  int workers = 1;
  CurvingWeights weights;
  HistoryAggregation aggregation = HistoryAggregation::kSum;
};

inline constexpr std::array<int, 4> kStpHits = {5, 10, 25, 50};
inline constexpr std::array<int, 4> kLtpChainHits = {1, 2, 3, 4};
inline constexpr std::array<int, 2> kLtpGreedyHits = {1, 2};
inline constexpr std::array<int, 3> kNextHits = {1, 5, 10};

// Every store key an evaluation will read. The evaluators derive their
// lookups from these same functions.
std::vector<EmbeddingKey> StpKeys(const StpSample &s, bool speaker_mode);
std::vector<EmbeddingKey> LtpKeys(const LtpSample &s, LtpMethod method, bool speaker_mode);
std::vector<EmbeddingKey> NextKeys(const NextSampleSet &set, NextVariant variant,
                                   bool speaker_mode);

// Short-term planning. Candidates and the true utterance are encoded on the
// before side (with the goal-distance parity token in speaker mode) and
// ranked against the goal's after encoding. Missing keys raise
// Error(kMissingEmbedding).
RankOutcome EvalStpSample(const StpSample &s, const EmbeddingStore &store, bool speaker_mode);
RankingReport EvalStp(std::span<const StpSample> samples, const EmbeddingStore &store,
                      const EvalOptions &opts);

// Long-term planning over the six orders of three goals.
RankOutcome EvalLtpSample(const LtpSample &s, const EmbeddingStore &store, LtpMethod method,
                          const EvalOptions &opts);
RankingReport EvalLtp(std::span<const LtpSample> samples, const EmbeddingStore &store,
                      LtpMethod method, const EvalOptions &opts);

// Next-utterance selection through ContextCache: history pushed turn by
// turn, then the true next utterance ranked within the pool.
std::vector<RankOutcome> EvalNextSet(const NextSampleSet &set, const EmbeddingStore &store,
                                     NextVariant variant, const EvalOptions &opts);
RankingReport EvalNext(std::span<const NextSampleSet> sets, const EmbeddingStore &store,
                       NextVariant variant, const EvalOptions &opts);

// The same protocol with BM25 over the concatenated history.
RankingReport EvalNextBm25(std::span<const NextSampleSet> sets, Bm25Params params, int workers);

// Converts a 1-based rank in a pool to (rank - 1) / (pool - 1); 0 for a
// pool of one.
double NormalizedRank(size_t rank, size_t pool);

}  // namespace ccl

#endif  // CCL_EVALUATE_H_
