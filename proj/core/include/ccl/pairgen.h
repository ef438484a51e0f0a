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

#ifndef CCL_PAIRGEN_H_
#define CCL_PAIRGEN_H_

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "ccl/corpus.h"

namespace ccl {

enum class PairMode {
  kCurved,          // target (l - i) / l
  kCurvedSpeaker,   // curved, with [E]/[O] before-side tokens
  kBinaryWindow,    // ab5: target 1 for every i in 1..l
  kBinaryAdjacent,  // ab2: target 1 for i = 1 only
};

// "curved", "speaker", "ab5", "ab2".
PairMode ParsePairMode(std::string_view name);
std::string_view PairModeName(PairMode mode);

enum class PairKind { kPositive, kSwapNegative, kRandomNegative };

std::string_view PairKindName(PairKind kind);
PairKind ParsePairKind(std::string_view name);

struct PairGenConfig {
  int window = 5;
  PairMode mode = PairMode::kCurved;
  uint64_t seed = 42;
  int random_negatives = 2;
  bool dedup = false;
};

struct TrainingPair {
  std::string sentence_a;
  std::string sentence_b;
  double score = 0.0;
  PairKind kind = PairKind::kPositive;

  bool operator==(const TrainingPair &) const = default;
};

// Random-utterance source for hard negatives: `texts` minus the half-open
// index range [exclude_begin, exclude_end), which holds the current
// dialogue's own utterances when drawing from a whole corpus.
class RandomPool {
 public:
  explicit RandomPool(std::span<const std::string> texts, size_t exclude_begin = 0,
                      size_t exclude_end = 0);

  size_t size() const { return texts_.size() - (exclude_end_ - exclude_begin_); }
  bool empty() const { return size() == 0; }
  const std::string &at(size_t k) const {
    return texts_[k < exclude_begin_ ? k : k + (exclude_end_ - exclude_begin_)];
  }

 private:
  std::span<const std::string> texts_;
  size_t exclude_begin_;
  size_t exclude_end_;
};

// Pairs for one speaker-merged dialogue. Every utterance index serves as a
// window anchor u[0]; for each i in 1..window with u[i] in range the output
// holds, in order: the positive, its direction swap, then
// cfg.random_negatives pool negatives. Randomness comes from a stream keyed
// by (cfg.seed, d.id). Each function checks cfg.mode and throws
// Error(kPrecondition) on a mismatch, Error(kEmptyRandomPool) when the pool
// is empty and a negative is needed.
std::vector<TrainingPair> CurvedPairs(const Dialogue &d, const PairGenConfig &cfg,
                                      const RandomPool &pool);
std::vector<TrainingPair> SpeakerPairs(const Dialogue &d, const PairGenConfig &cfg,
                                       const RandomPool &pool);
std::vector<TrainingPair> BinaryPairs(const Dialogue &d, const PairGenConfig &cfg,
                                      const RandomPool &pool);

// Dispatches on cfg.mode.
std::vector<TrainingPair> DialoguePairs(const Dialogue &d, const PairGenConfig &cfg,
                                        const RandomPool &pool);

// Whole corpus, in dialogue order. The pool for each dialogue is every
// utterance of the corpus outside that dialogue. Output does not depend on
// `workers`.
std::vector<TrainingPair> CorpusPairs(const Corpus &c, const PairGenConfig &cfg,
                                      int workers = 1);

// Removes exact repeats, keeping first occurrences.
std::vector<TrainingPair> DedupPairs(std::vector<TrainingPair> pairs);

std::string PairsToJsonl(std::span<const TrainingPair> pairs);
std::vector<TrainingPair> ParsePairsJsonl(std::string_view raw);

// Writes `header_line` (if non-empty) followed by one JSON object per pair.
// Returns the number of pair lines.
size_t ExportPairs(std::span<const TrainingPair> pairs, const std::string &path,
                   std::string_view header_line = {});

}  // namespace ccl

#endif  // CCL_PAIRGEN_H_
