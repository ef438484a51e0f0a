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

#include "render.h"

#include <algorithm>
#include <cstdio>
#include <map>

#include "ccl/error.h"

namespace ccl::cli {

namespace {

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

std::vector<std::string> Row(const std::string &cell, const RankingReport &top,
                             const RankingReport &r) {
  std::vector<std::string> row = {cell, r.parity, std::to_string(r.n)};
  for (const auto &[k, unused] : top.hits_at) {
    auto it = r.hits_at.find(k);
    row.push_back(Fixed(100.0 * (it == r.hits_at.end() ? 0.0 : it->second), 2));
  }
  if (top.reverse_hits_at_1) row.push_back(Fixed(100.0 * r.reverse_hits_at_1.value_or(0.0), 2));
  row.push_back(Fixed(r.average_rank, 2));
  if (top.mean_normalized_rank) row.push_back(Fixed(r.mean_normalized_rank.value_or(0.0), 4));
  return row;
}

}  // namespace

Table ReportTable(const RankingReport &report) {
  Table t;
  t.header = {"cell", "parity", "n"};
  for (const auto &[k, unused] : report.hits_at) t.header.push_back("Hits@" + std::to_string(k));
  if (report.reverse_hits_at_1) t.header.push_back("Reverse Hits@1");
  t.header.push_back("Avg Rank");
  if (report.mean_normalized_rank) t.header.push_back("Norm Rank");
  if (report.breakdown.empty()) return t;
  for (const auto &[cell, sub] : report.breakdown) t.rows.push_back(Row(cell, report, sub));
  for (const auto &[parity, sub] : report.by_parity) t.rows.push_back(Row("*", report, sub));
  t.rows.push_back(Row("*", report, report));
  return t;
}

std::string RenderTable(const Table &table) {
  std::vector<size_t> width(table.header.size());
  for (size_t c = 0; c < width.size(); ++c) {
    width[c] = table.header[c].size();
    for (const auto &row : table.rows) width[c] = std::max(width[c], row[c].size());
  }
  auto line = [&](const std::vector<std::string> &cells) {
    std::string s = "|";
    for (size_t c = 0; c < cells.size(); ++c) {
      s += ' ';
      // Text columns left-aligned, numbers right-aligned.
      if (c < 2) {
        s += cells[c] + std::string(width[c] - cells[c].size(), ' ');
      } else {
        s += std::string(width[c] - cells[c].size(), ' ') + cells[c];
      }
      s += " |";
    }
    return s + "\n";
  };
  std::string out = line(table.header);
  out += "|";
  for (size_t w : width) out += std::string(w + 2, '-') + "|";
  out += "\n";
  for (const auto &row : table.rows) out += line(row);
  return out;
}

std::string RenderCsv(const Table &table) {
  auto line = [](const std::vector<std::string> &cells) {
    std::string s;
    for (size_t c = 0; c < cells.size(); ++c) {
      if (c) s += ',';
      if (cells[c].find_first_of(",\"") != std::string::npos) {
        s += '"';
        for (char ch : cells[c]) s += ch == '"' ? std::string("\"\"") : std::string(1, ch);
        s += '"';
      } else {
        s += cells[c];
      }
    }
    return s + "\n";
  };
  std::string out = line(table.header);
  for (const auto &row : table.rows) out += line(row);
  return out;
}

std::string RenderPlotData(const RankingReport &report) {
  if (!report.mean_normalized_rank) {
    throw Error(ErrorCode::kFormatError, "plotdata needs a next-utterance report");
  }
  std::map<int, double> series;
  for (const auto &[cell, sub] : report.breakdown) {
    if (!cell.starts_with("h_l=") || !sub.mean_normalized_rank) {
      throw Error(ErrorCode::kFormatError, "unexpected cell \"" + cell + "\"");
    }
    try {
      series[std::stoi(cell.substr(4))] = *sub.mean_normalized_rank;
    } catch (const std::logic_error &) {
      throw Error(ErrorCode::kFormatError, "unexpected cell \"" + cell + "\"");
    }
  }
  std::string out = "# h_l normalized_rank\n";
  for (const auto &[h, v] : series) out += std::to_string(h) + " " + Fixed(v, 6) + "\n";
  return out;
}

}  // namespace ccl::cli
