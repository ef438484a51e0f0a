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

#ifndef CCL_SAMPLES_H_
#define CCL_SAMPLES_H_

#include <array>
#include <cstddef>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccl/corpus.h"

namespace ccl {

// Short-term planning: rank d[h_l] among generated candidates by closeness
// to the goal d[h_l + g_d].
struct StpSample {
  std::string dialogue_id;
  int history_length = 0;
  int goal_distance = 0;
  std::vector<Utterance> history;
  Utterance true_utterance;
  Utterance goal;
  std::vector<std::string> candidates;
};

// Long-term planning: order d[x], d[x + g_d], d[x + 2 g_d] given d[:h_l],
// with x = h_l + first_goal_in_distance.
struct LtpSample {
  std::string dialogue_id;
  int history_length = 0;
  int goal_distance = 0;
  int first_goal_in_distance = 0;
  std::vector<Utterance> history;
  std::array<Utterance, 3> goals;  // true chronological order
};

// Next-utterance selection at one depth h_l: every sample's true next turn
// is the pool entry carrying its dialogue id.
struct NextSample {
  std::string dialogue_id;
  std::vector<Utterance> history;
};

struct PoolEntry {
  std::string id;
  std::string text;
};

struct NextSampleSet {
  int history_length = 0;
  std::vector<NextSample> samples;
  std::vector<PoolEntry> pool;
};

// Externally generated STP candidates. Lines are {"dialogue_id",
// "candidates", "generator", "h_l"?}; "h_l" scopes a line to one history
// length when candidate sets differ per context.
struct CandidateIndex {
  std::map<std::pair<std::string, int>, std::vector<std::string>> by_key;  // h_l -1 = any
  nlohmann::json generator;  // first generator fingerprint seen

  const std::vector<std::string> *Find(const std::string &dialogue_id, int h_l) const;
};

CandidateIndex ParseCandidatesJsonl(std::string_view raw);
// Throws Error(kCandidateFileMissing) when the file does not exist.
CandidateIndex LoadCandidates(const std::string &path);

struct StpBuild {
  std::vector<StpSample> samples;
  size_t skipped_no_candidates = 0;
  size_t removed_true_duplicates = 0;
};

// One sample per dialogue with at least h_l + g_d + 1 turns. With
// `candidates` null the samples carry no candidates (sample counting and
// request planning); otherwise dialogues without candidates are skipped
// and counted, and candidates equal to the true utterance are removed.
StpBuild BuildStpSamples(const Corpus &c, int h_l, int g_d, const CandidateIndex *candidates);

// g_d >= 2 and h_l >= 1, else Error(kPrecondition). One sample per
// dialogue with at least x + 2 g_d + 1 turns.
std::vector<LtpSample> BuildLtpSamples(const Corpus &c, int h_l, int g_d,
                                       int first_goal_in_distance);

// Samples from every dialogue with at least h_l + 1 turns; the pool holds
// turn h_l of each such dialogue.
NextSampleSet BuildNextSamples(const Corpus &c, int h_l);

struct EncodingCost {
  size_t context_representations = 0;
  size_t utterances_encoded_context_mode = 0;
  size_t utterances_encoded_relativistic = 0;
  double factor = 0.0;
  std::map<int, size_t> samples_per_history_length;
};

// Encoder work for next-utterance selection over h_l = 1..max_h_l: a
// context encoder re-encodes all h_l history turns per sample, while the
// relativistic encoder encodes one new utterance per sample.
EncodingCost EncodingCostReport(const Corpus &c, int max_h_l = 10);

// JSONL round trips for sample files.
std::string StpSamplesToJsonl(const std::vector<StpSample> &samples);
std::vector<StpSample> ParseStpSamples(std::string_view raw);
std::string LtpSamplesToJsonl(const std::vector<LtpSample> &samples);
std::vector<LtpSample> ParseLtpSamples(std::string_view raw);
// One line per depth.
std::string NextSetsToJsonl(const std::vector<NextSampleSet> &sets);
std::vector<NextSampleSet> ParseNextSets(std::string_view raw);

}  // namespace ccl

#endif  // CCL_SAMPLES_H_
