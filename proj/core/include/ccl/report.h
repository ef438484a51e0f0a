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

#ifndef CCL_REPORT_H_
#define CCL_REPORT_H_

#include <cstddef>
#include <map>
#include <nlohmann/json.hpp>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ccl {

// Hits@K ratios are fractions in [0, 1]; average_rank is 1-based.
struct RankingReport {
  std::string task;
  std::string parity = "all";  // "odd", "even" or "all"
  size_t n = 0;
  std::map<int, double> hits_at;
  double average_rank = 0.0;
  std::optional<double> reverse_hits_at_1;     // long-term planning
  std::optional<double> mean_normalized_rank;  // next-utterance selection
  std::optional<size_t> pool_size;
  // Kept sorted by key. Vectors because the element type is incomplete here.
  std::vector<std::pair<std::string, RankingReport>> breakdown;
  std::vector<std::pair<std::string, RankingReport>> by_parity;
};

// One evaluated sample. `cell` names the dataset slice (e.g. "h_l=2,g_d=1");
// `parity_distance` selects the odd/even split, or -1 for none.
struct RankOutcome {
  std::string cell;
  int parity_distance = -1;
  size_t rank = 0;
  size_t partial_rank = 0;  // long-term planning: rank among true + partial orders
  bool beats_reverse = false;
  double normalized_rank = -1.0;  // next-utterance selection only
  size_t pool_size = 0;
};

enum class OutcomeKind { kPlain, kLtpPanels, kNormalized };

// Pools outcomes into a report with per-cell and per-parity sub-reports.
// Hits@K counts rank <= K (partial_rank for kLtpPanels).
RankingReport Summarize(std::string task, std::span<const RankOutcome> outcomes,
                        std::span<const int> ks, OutcomeKind kind);

nlohmann::json ReportToJson(const RankingReport &report);
// Throws Error(kFormatError).
RankingReport ReportFromJson(const nlohmann::json &j);

}  // namespace ccl

#endif  // CCL_REPORT_H_
