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

#include "ccl/context_cache.h"

#include <algorithm>
#include <mutex>

#include "ccl/error.h"

namespace ccl {

CandidateMatrix::CandidateMatrix(std::span<const Candidate> candidates) {
  if (!candidates.empty()) dim_ = static_cast<int>(candidates.front().vector.size());
  ids_.reserve(candidates.size());
  data_.reserve(candidates.size() * dim_);
  for (const Candidate &c : candidates) {
    if (static_cast<int>(c.vector.size()) != dim_) {
      throw Error(ErrorCode::kDimMismatch, "candidate " + c.id);
    }
    if (!index_.emplace(c.id, ids_.size()).second) {
      throw Error(ErrorCode::kDuplicateCandidate, c.id);
    }
    ids_.push_back(c.id);
    data_.insert(data_.end(), c.vector.begin(), c.vector.end());
  }
}

long CandidateMatrix::Find(const std::string &id) const {
  auto it = index_.find(id);
  return it == index_.end() ? -1 : static_cast<long>(it->second);
}

ContextCache::ContextCache(std::shared_ptr<const CandidateMatrix> candidates)
    : candidates_(std::move(candidates)), scores_(candidates_->size(), 0.0) {}

ContextCache::ContextCache(std::span<const Candidate> candidates)
    : ContextCache(std::make_shared<const CandidateMatrix>(candidates)) {}

ContextCache::ContextCache(ContextCache &&other) noexcept
    : candidates_(std::move(other.candidates_)) {
  std::unique_lock lock(other.mu_);
  history_ = std::move(other.history_);
  scores_ = std::move(other.scores_);
}

void ContextCache::Push(Vec utterance_before) {
  const CandidateMatrix &m = *candidates_;
  if (m.size() > 0 && static_cast<int>(utterance_before.size()) != m.dim()) {
    throw Error(ErrorCode::kDimMismatch, std::to_string(utterance_before.size()) + " vs " +
                                             std::to_string(m.dim()));
  }
  // Score the new row outside the lock, then publish in one step.
  std::vector<double> delta(m.size());
  for (size_t c = 0; c < m.size(); ++c) delta[c] = Cosine(utterance_before, m.row(c));
  std::unique_lock lock(mu_);
  for (size_t c = 0; c < m.size(); ++c) scores_[c] += delta[c];
  history_.emplace_back(utterance_before.begin(), utterance_before.end());
}

size_t ContextCache::history_size() const {
  std::shared_lock lock(mu_);
  return history_.size();
}

double ContextCache::Score(const std::string &id) const {
  long k = candidates_->Find(id);
  if (k < 0) throw Error(ErrorCode::kPrecondition, "unknown candidate " + id);
  std::shared_lock lock(mu_);
  return scores_[k];
}

std::vector<double> ContextCache::Scores() const {
  std::shared_lock lock(mu_);
  return scores_;
}

std::vector<RankedItem> ContextCache::Top(size_t k) const {
  if (k < 1) throw Error(ErrorCode::kPrecondition, "k must be >= 1");
  std::vector<RankedItem> items;
  {
    std::shared_lock lock(mu_);
    items.reserve(scores_.size());
    for (size_t c = 0; c < scores_.size(); ++c) items.push_back({candidates_->id(c), scores_[c]});
  }
  const size_t keep = std::min(k, items.size());
  auto better = [](const RankedItem &a, const RankedItem &b) {
    if (a.score != b.score) return a.score > b.score;
    return a.id < b.id;
  };
  std::partial_sort(items.begin(), items.begin() + keep, items.end(), better);
  items.resize(keep);
  return items;
}

size_t ContextCache::RankOf(const std::string &id) const {
  long k = candidates_->Find(id);
  if (k < 0) throw Error(ErrorCode::kPrecondition, "unknown candidate " + id);
  std::shared_lock lock(mu_);
  const double mine = scores_[k];
  size_t rank = 1;
  for (size_t c = 0; c < scores_.size(); ++c) {
    if (scores_[c] > mine || (scores_[c] == mine && candidates_->id(c) < id)) ++rank;
  }
  return rank;
}

}  // namespace ccl
