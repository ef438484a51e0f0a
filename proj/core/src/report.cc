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

#include "ccl/report.h"

#include <algorithm>

#include "ccl/error.h"

namespace ccl {

using json = nlohmann::json;

namespace {

RankingReport Pool(const std::string &task, const std::string &parity,
                   std::span<const RankOutcome *const> outs, std::span<const int> ks,
                   OutcomeKind kind) {
  RankingReport r;
  r.task = task;
  r.parity = parity;
  r.n = outs.size();
  for (int k : ks) r.hits_at[k] = 0.0;
  if (outs.empty()) return r;
  double rank_sum = 0.0, reverse = 0.0, normalized = 0.0;
  size_t pool = 0;
  for (const RankOutcome *o : outs) {
    rank_sum += static_cast<double>(o->rank);
    const size_t hit_rank = kind == OutcomeKind::kLtpPanels ? o->partial_rank : o->rank;
    for (int k : ks) {
      if (hit_rank <= static_cast<size_t>(k)) r.hits_at[k] += 1.0;
    }
    if (o->beats_reverse) reverse += 1.0;
    normalized += o->normalized_rank;
    pool = std::max(pool, o->pool_size);
  }
  const double n = static_cast<double>(outs.size());
  for (auto &[k, v] : r.hits_at) v /= n;
  r.average_rank = rank_sum / n;
  if (kind == OutcomeKind::kLtpPanels) r.reverse_hits_at_1 = reverse / n;
  if (kind == OutcomeKind::kNormalized) r.mean_normalized_rank = normalized / n;
  if (pool > 0) r.pool_size = pool;
  return r;
}

json ReportBody(const RankingReport &r) {
  json hits = json::object();
  for (const auto &[k, v] : r.hits_at) hits[std::to_string(k)] = v;
  json j = {{"task", r.task},       {"parity", r.parity},
            {"n", r.n},             {"hits_at", std::move(hits)},
            {"average_rank", r.average_rank}};
  if (r.reverse_hits_at_1) j["reverse_hits_at_1"] = *r.reverse_hits_at_1;
  if (r.mean_normalized_rank) j["mean_normalized_rank"] = *r.mean_normalized_rank;
  if (r.pool_size) j["pool_size"] = *r.pool_size;
  json breakdown = json::object();
  for (const auto &[cell, sub] : r.breakdown) breakdown[cell] = ReportBody(sub);
  j["breakdown"] = std::move(breakdown);
  if (!r.by_parity.empty()) {
    json parity = json::object();
    for (const auto &[p, sub] : r.by_parity) parity[p] = ReportBody(sub);
    j["by_parity"] = std::move(parity);
  }
  return j;
}

}  // namespace

RankingReport Summarize(std::string task, std::span<const RankOutcome> outcomes,
                        std::span<const int> ks, OutcomeKind kind) {
  std::vector<const RankOutcome *> all;
  std::map<std::string, std::vector<const RankOutcome *>> cells;
  std::map<std::string, std::vector<const RankOutcome *>> parities;
  for (const RankOutcome &o : outcomes) {
    all.push_back(&o);
    if (!o.cell.empty()) cells[o.cell].push_back(&o);
    if (o.parity_distance >= 0) {
      parities[o.parity_distance % 2 == 0 ? "even" : "odd"].push_back(&o);
    }
  }
  RankingReport r = Pool(task, "all", all, ks, kind);
  for (const auto &[cell, outs] : cells) {
    r.breakdown.emplace_back(cell, Pool(task, "all", outs, ks, kind));
  }
  for (const auto &[p, outs] : parities) {
    r.by_parity.emplace_back(p, Pool(task, p, outs, ks, kind));
  }
  return r;
}

json ReportToJson(const RankingReport &report) { return ReportBody(report); }

RankingReport ReportFromJson(const json &j) {
  RankingReport r;
  try {
    r.task = j.at("task").get<std::string>();
    r.parity = j.value("parity", "all");
    r.n = j.at("n").get<size_t>();
    for (const auto &[k, v] : j.at("hits_at").items()) r.hits_at[std::stoi(k)] = v.get<double>();
    r.average_rank = j.at("average_rank").get<double>();
    if (j.contains("reverse_hits_at_1")) r.reverse_hits_at_1 = j["reverse_hits_at_1"].get<double>();
    if (j.contains("mean_normalized_rank")) {
      r.mean_normalized_rank = j["mean_normalized_rank"].get<double>();
    }
    if (j.contains("pool_size")) r.pool_size = j["pool_size"].get<size_t>();
    if (j.contains("breakdown")) {
      for (const auto &[cell, sub] : j["breakdown"].items()) {
        r.breakdown.emplace_back(cell, ReportFromJson(sub));
      }
    }
    if (j.contains("by_parity")) {
      for (const auto &[p, sub] : j["by_parity"].items()) {
        r.by_parity.emplace_back(p, ReportFromJson(sub));
      }
    }
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kFormatError, e.what());
  } catch (const std::logic_error &e) {
    throw Error(ErrorCode::kFormatError, e.what());
  }
  return r;
}

}  // namespace ccl
