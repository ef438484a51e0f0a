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

#ifndef CCL_TOOLS_RENDER_H_
#define CCL_TOOLS_RENDER_H_

#include <string>
#include <vector>

#include "ccl/report.h"

namespace ccl::cli {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
};

// One row per breakdown cell, then the parity splits and the pooled row.
// Columns follow the report: Hits@K for every K present, the reverse panel
// for long-term planning, average rank, and mean normalized rank for
// next-utterance selection. Ratios are printed as percentages.
Table ReportTable(const RankingReport &report);

std::string RenderTable(const Table &table);
std::string RenderCsv(const Table &table);

// "h_l normalized_rank" lines sorted by h_l. Throws Error(kFormatError)
// unless the report carries normalized ranks per "h_l=<k>" cell.
std::string RenderPlotData(const RankingReport &report);

}  // namespace ccl::cli

#endif  // CCL_TOOLS_RENDER_H_
