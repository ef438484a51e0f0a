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

#ifndef CCL_BM25_H_
#define CCL_BM25_H_

#include <cstddef>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

namespace ccl {

struct Bm25Params {
  double k1 = 1.5;
  double b = 0.75;
};

// Okapi BM25 over a fixed document pool. Documents and queries are
// lowercased and split on whitespace. IDF is log((N - n + 0.5) / (n + 0.5)),
// floored at 0.
class Bm25Index {
 public:
  explicit Bm25Index(std::span<const std::string> docs, Bm25Params params = {});

  size_t size() const { return doc_tf_.size(); }
  double idf(const std::string &term) const;
  // One score per document; every query token contributes, repeats included.
  std::vector<double> Scores(std::span<const std::string> query_tokens) const;

 private:
  Bm25Params params_;
  std::vector<std::unordered_map<std::string, int>> doc_tf_;
  std::vector<size_t> doc_len_;
  std::unordered_map<std::string, size_t> df_;
  double avg_len_ = 0.0;
};

std::vector<std::string> Bm25Tokens(std::span<const std::string> texts);

struct Bm25Hit {
  size_t doc = 0;
  double score = 0.0;
};

// Pool documents scored against the concatenated history, best first, ties
// by pool index. Throws Error(kPrecondition) for an empty pool.
std::vector<Bm25Hit> Bm25Rank(std::span<const std::string> history,
                              std::span<const std::string> pool, Bm25Params params = {});

}  // namespace ccl

#endif  // CCL_BM25_H_
