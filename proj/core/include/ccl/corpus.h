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

#ifndef CCL_CORPUS_H_
#define CCL_CORPUS_H_

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ccl {

struct Utterance {
  std::string text;
  int speaker = 0;  // 0 or 1
  int index = 0;    // position within the dialogue

  bool operator==(const Utterance &) const = default;
};

struct Dialogue {
  std::string id;
  std::vector<Utterance> turns;
  std::optional<std::string> domain;

  bool operator==(const Dialogue &) const = default;
};

struct Corpus {
  std::string name;
  std::vector<Dialogue> dialogues;

  bool operator==(const Corpus &) const = default;
};

// DailyDialog native format: one dialogue per line, utterances separated by
// `__eou__`, speakers alternating from 0. Ids are "0", "1", ... over the
// non-empty lines. Segments that are blank after trimming are skipped.
// Throws Error(kEmptyCorpus) when there is no non-empty line.
Corpus ParseDailyDialog(std::string_view raw, std::string name = "dailydialog");

// Canonical JSONL: {"id", "turns": [{"speaker", "text"}], "domain"?} per
// line. Blank lines and `{"_meta": ...}` header lines are ignored. Throws
// Error(kParseError, line) / Error(kSchemaError, line) with 1-based lines.
Corpus ParseJsonlDialogues(std::string_view raw, std::string name = "corpus");

// Inverse of ParseJsonlDialogues, without a header line.
std::string SerializeJsonl(const Corpus &corpus);

// Joins runs of same-speaker turns with a single space and renumbers.
Dialogue MergeConsecutiveTurns(const Dialogue &d);
Corpus MergeConsecutiveTurns(const Corpus &c);

inline constexpr size_t kNoTokenLimit = std::numeric_limits<size_t>::max();

struct FilterResult {
  Corpus corpus;
  size_t dropped = 0;
};

// Drops every dialogue holding an utterance with more than `max_tokens`
// whitespace-delimited tokens.
FilterResult FilterLong(const Corpus &c, size_t max_tokens = 200);

struct CorpusSplit {
  Corpus train;
  Corpus test;
};

// Test = the last `n_per_domain` dialogues (file order) of every domain.
// Throws kMissingDomainTag, or kDomainTooSmall when a domain does not have
// more than n_per_domain dialogues.
CorpusSplit SplitTailPerDomain(const Corpus &c, size_t n_per_domain = 333);

}  // namespace ccl

#endif  // CCL_CORPUS_H_
