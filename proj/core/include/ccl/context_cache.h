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

#ifndef CCL_CONTEXT_CACHE_H_
#define CCL_CONTEXT_CACHE_H_

#include <cstddef>
#include <memory>
#include <shared_mutex>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "ccl/curvedspace.h"

namespace ccl {

// Candidate after-vectors packed row-major. Immutable, so one matrix can
// back many caches (one per dialogue) without copying.
class CandidateMatrix {
 public:
  // Throws Error(kDuplicateCandidate) or Error(kDimMismatch).
  explicit CandidateMatrix(std::span<const Candidate> candidates);

  size_t size() const { return ids_.size(); }
  int dim() const { return dim_; }
  const std::string &id(size_t k) const { return ids_[k]; }
  Vec row(size_t k) const { return {data_.data() + k * dim_, static_cast<size_t>(dim_)}; }
  // Row index for an id, or -1.
  long Find(const std::string &id) const;

 private:
  int dim_ = 0;
  std::vector<std::string> ids_;
  std::vector<float> data_;
  std::unordered_map<std::string, size_t> index_;
};

// Running history-to-candidate scores. Each Push adds one history
// utterance's cosines to every candidate's total, so a turn costs one pass
// over the candidates instead of re-scoring the whole history.
//
// Single writer; readers may run concurrently with Push and always see the
// state before or after a whole push, never in between.
class ContextCache {
 public:
  explicit ContextCache(std::shared_ptr<const CandidateMatrix> candidates);
  // Copies the candidates into a fresh matrix.
  explicit ContextCache(std::span<const Candidate> candidates);

  ContextCache(ContextCache &&other) noexcept;
  ContextCache &operator=(ContextCache &&) = delete;
  ContextCache(const ContextCache &) = delete;
  ContextCache &operator=(const ContextCache &) = delete;

  // Throws Error(kDimMismatch) when the candidate set is non-empty and the
  // dimension differs.
  void Push(Vec utterance_before);

  size_t history_size() const;
  size_t candidate_count() const { return candidates_->size(); }
  // Throws Error(kPrecondition) for an unknown id.
  double Score(const std::string &id) const;
  std::vector<double> Scores() const;
  // Best k by accumulated score, ties by id. k >= 1.
  std::vector<RankedItem> Top(size_t k) const;
  // 1-based rank of `id` under the same ordering as Top.
  size_t RankOf(const std::string &id) const;

  const CandidateMatrix &candidates() const { return *candidates_; }

 private:
  std::shared_ptr<const CandidateMatrix> candidates_;
  mutable std::shared_mutex mu_;
  std::vector<std::vector<float>> history_;
  std::vector<double> scores_;
};

}  // namespace ccl

#endif  // CCL_CONTEXT_CACHE_H_
