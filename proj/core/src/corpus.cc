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

#include "ccl/corpus.h"

#include <map>
#include <nlohmann/json.hpp>
#include <unordered_set>

#include "ccl/error.h"
#include "ccl/util.h"

namespace ccl {

using json = nlohmann::json;

namespace {

constexpr std::string_view kEou = "__eou__";

Dialogue ParseDailyDialogLine(std::string_view line, std::string id) {
  Dialogue d;
  d.id = std::move(id);
  size_t pos = 0;
  while (pos <= line.size()) {
    size_t sep = line.find(kEou, pos);
    std::string_view seg = sep == std::string_view::npos
                               ? line.substr(pos)
                               : line.substr(pos, sep - pos);
    seg = Trim(seg);
    if (!seg.empty()) {
      int idx = static_cast<int>(d.turns.size());
      d.turns.push_back({std::string(seg), idx % 2, idx});
    }
    if (sep == std::string_view::npos) break;
    pos = sep + kEou.size();
  }
  return d;
}

[[noreturn]] void Schema(long line, const std::string &what) {
  throw Error(ErrorCode::kSchemaError, what, line);
}

}  // namespace

Corpus ParseDailyDialog(std::string_view raw, std::string name) {
  Corpus c;
  c.name = std::move(name);
  for (std::string_view line : SplitLines(raw)) {
    if (Trim(line).empty()) continue;
    Dialogue d = ParseDailyDialogLine(line, std::to_string(c.dialogues.size()));
    if (d.turns.empty()) continue;
    c.dialogues.push_back(std::move(d));
  }
  if (c.dialogues.empty()) throw Error(ErrorCode::kEmptyCorpus, "no dialogues");
  return c;
}

Corpus ParseJsonlDialogues(std::string_view raw, std::string name) {
  Corpus c;
  c.name = std::move(name);
  std::unordered_set<std::string> ids;
  long line_no = 0;
  for (std::string_view line : SplitLines(raw)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    json obj;
    try {
      obj = json::parse(line);
    } catch (const json::parse_error &e) {
      throw Error(ErrorCode::kParseError, e.what(), line_no);
    }
    if (!obj.is_object()) Schema(line_no, "expected an object");
    if (obj.contains("_meta")) continue;

    auto id_it = obj.find("id");
    if (id_it == obj.end() || !id_it->is_string()) Schema(line_no, "missing string \"id\"");
    auto turns_it = obj.find("turns");
    if (turns_it == obj.end() || !turns_it->is_array() || turns_it->empty()) {
      Schema(line_no, "missing non-empty \"turns\"");
    }
    Dialogue d;
    d.id = id_it->get<std::string>();
    if (!ids.insert(d.id).second) Schema(line_no, "duplicate id \"" + d.id + "\"");
    for (const json &t : *turns_it) {
      if (!t.is_object()) Schema(line_no, "turn is not an object");
      auto sp = t.find("speaker");
      auto tx = t.find("text");
      if (sp == t.end() || !sp->is_number_integer()) Schema(line_no, "turn lacks integer \"speaker\"");
      if (tx == t.end() || !tx->is_string()) Schema(line_no, "turn lacks string \"text\"");
      int speaker = sp->get<int>();
      if (speaker != 0 && speaker != 1) Schema(line_no, "speaker must be 0 or 1");
      std::string text(Trim(tx->get_ref<const std::string &>()));
      if (text.empty()) Schema(line_no, "empty utterance text");
      d.turns.push_back({std::move(text), speaker, static_cast<int>(d.turns.size())});
    }
    if (auto dom = obj.find("domain"); dom != obj.end() && !dom->is_null()) {
      if (!dom->is_string()) Schema(line_no, "\"domain\" must be a string");
      d.domain = dom->get<std::string>();
    }
    c.dialogues.push_back(std::move(d));
  }
  return c;
}

std::string SerializeJsonl(const Corpus &corpus) {
  std::string out;
  for (const Dialogue &d : corpus.dialogues) {
    json turns = json::array();
    for (const Utterance &u : d.turns) {
      turns.push_back({{"speaker", u.speaker}, {"text", u.text}});
    }
    json obj = {{"id", d.id}, {"turns", std::move(turns)}};
    if (d.domain) obj["domain"] = *d.domain;
    out += obj.dump();
    out += '\n';
  }
  return out;
}

Dialogue MergeConsecutiveTurns(const Dialogue &d) {
  Dialogue out;
  out.id = d.id;
  out.domain = d.domain;
  for (const Utterance &u : d.turns) {
    if (!out.turns.empty() && out.turns.back().speaker == u.speaker) {
      out.turns.back().text += ' ';
      out.turns.back().text += u.text;
    } else {
      out.turns.push_back({u.text, u.speaker, static_cast<int>(out.turns.size())});
    }
  }
  return out;
}

Corpus MergeConsecutiveTurns(const Corpus &c) {
  Corpus out;
  out.name = c.name;
  out.dialogues.reserve(c.dialogues.size());
  for (const Dialogue &d : c.dialogues) out.dialogues.push_back(MergeConsecutiveTurns(d));
  return out;
}

FilterResult FilterLong(const Corpus &c, size_t max_tokens) {
  if (max_tokens < 1) throw Error(ErrorCode::kPrecondition, "max_tokens must be >= 1");
  FilterResult r;
  r.corpus.name = c.name;
  for (const Dialogue &d : c.dialogues) {
    bool too_long = false;
    for (const Utterance &u : d.turns) {
      if (SplitWhitespace(u.text).size() > max_tokens) {
        too_long = true;
        break;
      }
    }
    if (too_long) {
      ++r.dropped;
    } else {
      r.corpus.dialogues.push_back(d);
    }
  }
  return r;
}

CorpusSplit SplitTailPerDomain(const Corpus &c, size_t n_per_domain) {
  std::map<std::string, size_t> totals;
  for (const Dialogue &d : c.dialogues) {
    if (!d.domain) throw Error(ErrorCode::kMissingDomainTag, "dialogue " + d.id);
    ++totals[*d.domain];
  }
  for (const auto &[domain, n] : totals) {
    if (n <= n_per_domain) {
      throw Error(ErrorCode::kDomainTooSmall,
                  domain + " has " + std::to_string(n) + " dialogues");
    }
  }
  CorpusSplit split;
  split.train.name = c.name;
  split.test.name = c.name + ".test";
  std::map<std::string, size_t> seen;
  for (const Dialogue &d : c.dialogues) {
    size_t k = seen[*d.domain]++;
    if (k >= totals[*d.domain] - n_per_domain) {
      split.test.dialogues.push_back(d);
    } else {
      split.train.dialogues.push_back(d);
    }
  }
  return split;
}

}  // namespace ccl
