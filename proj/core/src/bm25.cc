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

#include "ccl/bm25.h"

#include <algorithm>
#include <cmath>

#include "ccl/error.h"
#include "ccl/util.h"

namespace ccl {

std::vector<std::string> Bm25Tokens(std::span<const std::string> texts) {
  std::vector<std::string> out;
  for (const std::string &t : texts) {
    for (std::string_view tok : SplitWhitespace(t)) out.push_back(ToLower(tok));
  }
  return out;
}

Bm25Index::Bm25Index(std::span<const std::string> docs, Bm25Params params) : params_(params) {
  doc_tf_.resize(docs.size());
  doc_len_.resize(docs.size());
  size_t total = 0;
  for (size_t d = 0; d < docs.size(); ++d) {
    std::vector<std::string> toks = Bm25Tokens(docs.subspan(d, 1));
    doc_len_[d] = toks.size();
    total += toks.size();
    for (std::string &t : toks) ++doc_tf_[d][std::move(t)];
    for (const auto &[term, tf] : doc_tf_[d]) ++df_[term];
  }
  avg_len_ = docs.empty() ? 0.0 : static_cast<double>(total) / docs.size();
}

double Bm25Index::idf(const std::string &term) const {
  auto it = df_.find(term);
  const double n = it == df_.end() ? 0.0 : static_cast<double>(it->second);
  const double big_n = static_cast<double>(doc_tf_.size());
  return std::max(0.0, std::log((big_n - n + 0.5) / (n + 0.5)));
}

std::vector<double> Bm25Index::Scores(std::span<const std::string> query_tokens) const {
  std::vector<double> scores(doc_tf_.size(), 0.0);
  for (const std::string &q : query_tokens) {
    if (df_.find(q) == df_.end()) continue;
    const double w = idf(q);
    if (w == 0.0) continue;
    for (size_t d = 0; d < doc_tf_.size(); ++d) {
      auto it = doc_tf_[d].find(q);
      if (it == doc_tf_[d].end()) continue;
      const double tf = it->second;
      const double norm = avg_len_ > 0.0 ? doc_len_[d] / avg_len_ : 0.0;
      scores[d] += w * tf * (params_.k1 + 1.0) /
                   (tf + params_.k1 * (1.0 - params_.b + params_.b * norm));
    }
  }
  return scores;
}

std::vector<Bm25Hit> Bm25Rank(std::span<const std::string> history,
                              std::span<const std::string> pool, Bm25Params params) {
  if (pool.empty()) throw Error(ErrorCode::kPrecondition, "empty BM25 pool");
  Bm25Index index(pool, params);
  std::vector<double> scores = index.Scores(Bm25Tokens(history));
  std::vector<Bm25Hit> hits(pool.size());
  for (size_t d = 0; d < pool.size(); ++d) hits[d] = {d, scores[d]};
  std::sort(hits.begin(), hits.end(), [](const Bm25Hit &a, const Bm25Hit &b) {
    if (a.score != b.score) return a.score > b.score;
    return a.doc < b.doc;
  });
  return hits;
}

}  // namespace ccl
