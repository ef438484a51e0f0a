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

#include "ccl/samples.h"

#include <algorithm>

#include "ccl/error.h"
#include "ccl/util.h"

namespace ccl {

using json = nlohmann::json;

namespace {

json UtteranceJson(const Utterance &u) {
  return {{"text", u.text}, {"speaker", u.speaker}, {"index", u.index}};
}

Utterance UtteranceFrom(const json &j) {
  return {j.at("text").get<std::string>(), j.at("speaker").get<int>(), j.at("index").get<int>()};
}

json UtterancesJson(const std::vector<Utterance> &us) {
  json arr = json::array();
  for (const Utterance &u : us) arr.push_back(UtteranceJson(u));
  return arr;
}

std::vector<Utterance> UtterancesFrom(const json &j) {
  std::vector<Utterance> out;
  for (const json &u : j) out.push_back(UtteranceFrom(u));
  return out;
}

// Parses each non-blank, non-header line with `fn`, mapping JSON failures to
// ParseError / SchemaError with the 1-based line number.
template <typename Fn>
void ForEachJsonLine(std::string_view raw, Fn fn) {
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
    if (obj.is_object() && obj.contains("_meta")) continue;
    try {
      fn(obj);
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kSchemaError, e.what(), line_no);
    }
  }
}

std::vector<Utterance> Prefix(const Dialogue &d, int n) {
  return {d.turns.begin(), d.turns.begin() + n};
}

}  // namespace

const std::vector<std::string> *CandidateIndex::Find(const std::string &dialogue_id,
                                                     int h_l) const {
  auto it = by_key.find({dialogue_id, h_l});
  if (it != by_key.end()) return &it->second;
  it = by_key.find({dialogue_id, -1});
  return it == by_key.end() ? nullptr : &it->second;
}

CandidateIndex ParseCandidatesJsonl(std::string_view raw) {
  CandidateIndex index;
  ForEachJsonLine(raw, [&](const json &obj) {
    std::string id = obj.at("dialogue_id").get<std::string>();
    int h_l = obj.contains("h_l") ? obj.at("h_l").get<int>() : -1;
    auto &slot = index.by_key[{std::move(id), h_l}];
    for (const json &c : obj.at("candidates")) {
      std::string text(Trim(c.get<std::string>()));
      if (!text.empty()) slot.push_back(std::move(text));
    }
    if (index.generator.is_null() && obj.contains("generator")) index.generator = obj["generator"];
  });
  return index;
}

CandidateIndex LoadCandidates(const std::string &path) {
  if (!FileExists(path)) throw Error(ErrorCode::kCandidateFileMissing, path);
  return ParseCandidatesJsonl(ReadFile(path));
}

StpBuild BuildStpSamples(const Corpus &c, int h_l, int g_d, const CandidateIndex *candidates) {
  if (h_l < 1 || g_d < 1) throw Error(ErrorCode::kPrecondition, "need h_l >= 1 and g_d >= 1");
  StpBuild out;
  for (const Dialogue &d : c.dialogues) {
    if (static_cast<int>(d.turns.size()) < h_l + g_d + 1) continue;
    StpSample s;
    s.dialogue_id = d.id;
    s.history_length = h_l;
    s.goal_distance = g_d;
    s.history = Prefix(d, h_l);
    s.true_utterance = d.turns[h_l];
    s.goal = d.turns[h_l + g_d];
    if (candidates != nullptr) {
      const std::vector<std::string> *cands = candidates->Find(d.id, h_l);
      if (cands == nullptr || cands->empty()) {
        ++out.skipped_no_candidates;
        continue;
      }
      for (const std::string &text : *cands) {
        if (text == s.true_utterance.text) {
          ++out.removed_true_duplicates;
        } else {
          s.candidates.push_back(text);
        }
      }
      if (s.candidates.empty()) {
        ++out.skipped_no_candidates;
        continue;
      }
    }
    out.samples.push_back(std::move(s));
  }
  return out;
}

std::vector<LtpSample> BuildLtpSamples(const Corpus &c, int h_l, int g_d,
                                       int first_goal_in_distance) {
  if (g_d < 2) throw Error(ErrorCode::kPrecondition, "long-term planning needs g_d >= 2");
  if (h_l < 1) throw Error(ErrorCode::kPrecondition, "need h_l >= 1");
  if (first_goal_in_distance < 0) {
    throw Error(ErrorCode::kPrecondition, "first goal in distance must be >= 0");
  }
  const int x = h_l + first_goal_in_distance;
  std::vector<LtpSample> out;
  for (const Dialogue &d : c.dialogues) {
    if (static_cast<int>(d.turns.size()) < x + 2 * g_d + 1) continue;
    LtpSample s;
    s.dialogue_id = d.id;
    s.history_length = h_l;
    s.goal_distance = g_d;
    s.first_goal_in_distance = first_goal_in_distance;
    s.history = Prefix(d, h_l);
    s.goals = {d.turns[x], d.turns[x + g_d], d.turns[x + 2 * g_d]};
    out.push_back(std::move(s));
  }
  return out;
}

NextSampleSet BuildNextSamples(const Corpus &c, int h_l) {
  if (h_l < 1) throw Error(ErrorCode::kPrecondition, "need h_l >= 1");
  NextSampleSet set;
  set.history_length = h_l;
  for (const Dialogue &d : c.dialogues) {
    if (static_cast<int>(d.turns.size()) < h_l + 1) continue;
    set.samples.push_back({d.id, Prefix(d, h_l)});
    set.pool.push_back({d.id, d.turns[h_l].text});
  }
  return set;
}

EncodingCost EncodingCostReport(const Corpus &c, int max_h_l) {
  if (max_h_l < 1) throw Error(ErrorCode::kPrecondition, "max_h_l must be >= 1");
  EncodingCost cost;
  for (int h = 1; h <= max_h_l; ++h) {
    size_t n = 0;
    for (const Dialogue &d : c.dialogues) {
      if (static_cast<int>(d.turns.size()) >= h + 1) ++n;
    }
    cost.samples_per_history_length[h] = n;
    cost.context_representations += n;
    cost.utterances_encoded_context_mode += n * static_cast<size_t>(h);
  }
  cost.utterances_encoded_relativistic = cost.context_representations;
  cost.factor = cost.utterances_encoded_relativistic == 0
                    ? 0.0
                    : static_cast<double>(cost.utterances_encoded_context_mode) /
                          static_cast<double>(cost.utterances_encoded_relativistic);
  return cost;
}

std::string StpSamplesToJsonl(const std::vector<StpSample> &samples) {
  std::string out;
  for (const StpSample &s : samples) {
    out += json{{"dialogue_id", s.dialogue_id},
                {"h_l", s.history_length},
                {"g_d", s.goal_distance},
                {"history", UtterancesJson(s.history)},
                {"true", UtteranceJson(s.true_utterance)},
                {"goal", UtteranceJson(s.goal)},
                {"candidates", s.candidates}}
               .dump();
    out += '\n';
  }
  return out;
}

std::vector<StpSample> ParseStpSamples(std::string_view raw) {
  std::vector<StpSample> out;
  ForEachJsonLine(raw, [&](const json &o) {
    StpSample s;
    s.dialogue_id = o.at("dialogue_id").get<std::string>();
    s.history_length = o.at("h_l").get<int>();
    s.goal_distance = o.at("g_d").get<int>();
    s.history = UtterancesFrom(o.at("history"));
    s.true_utterance = UtteranceFrom(o.at("true"));
    s.goal = UtteranceFrom(o.at("goal"));
    s.candidates = o.at("candidates").get<std::vector<std::string>>();
    out.push_back(std::move(s));
  });
  return out;
}

std::string LtpSamplesToJsonl(const std::vector<LtpSample> &samples) {
  std::string out;
  for (const LtpSample &s : samples) {
    json goals = json::array();
    for (const Utterance &g : s.goals) goals.push_back(UtteranceJson(g));
    out += json{{"dialogue_id", s.dialogue_id},
                {"h_l", s.history_length},
                {"g_d", s.goal_distance},
                {"fgid", s.first_goal_in_distance},
                {"history", UtterancesJson(s.history)},
                {"goals", std::move(goals)}}
               .dump();
    out += '\n';
  }
  return out;
}

std::vector<LtpSample> ParseLtpSamples(std::string_view raw) {
  std::vector<LtpSample> out;
  ForEachJsonLine(raw, [&](const json &o) {
    LtpSample s;
    s.dialogue_id = o.at("dialogue_id").get<std::string>();
    s.history_length = o.at("h_l").get<int>();
    s.goal_distance = o.at("g_d").get<int>();
    s.first_goal_in_distance = o.at("fgid").get<int>();
    s.history = UtterancesFrom(o.at("history"));
    const json &goals = o.at("goals");
    if (goals.size() != 3) throw json::other_error::create(501, "expected 3 goals", &goals);
    for (size_t k = 0; k < 3; ++k) s.goals[k] = UtteranceFrom(goals[k]);
    out.push_back(std::move(s));
  });
  return out;
}

std::string NextSetsToJsonl(const std::vector<NextSampleSet> &sets) {
  std::string out;
  for (const NextSampleSet &set : sets) {
    json samples = json::array();
    for (const NextSample &s : set.samples) {
      samples.push_back({{"dialogue_id", s.dialogue_id}, {"history", UtterancesJson(s.history)}});
    }
    json pool = json::array();
    for (const PoolEntry &p : set.pool) pool.push_back({{"id", p.id}, {"text", p.text}});
    out += json{{"h_l", set.history_length}, {"samples", std::move(samples)},
                {"pool", std::move(pool)}}
               .dump();
    out += '\n';
  }
  return out;
}

std::vector<NextSampleSet> ParseNextSets(std::string_view raw) {
  std::vector<NextSampleSet> out;
  ForEachJsonLine(raw, [&](const json &o) {
    NextSampleSet set;
    set.history_length = o.at("h_l").get<int>();
    for (const json &s : o.at("samples")) {
      set.samples.push_back({s.at("dialogue_id").get<std::string>(), UtterancesFrom(s.at("history"))});
    }
    for (const json &p : o.at("pool")) {
      set.pool.push_back({p.at("id").get<std::string>(), p.at("text").get<std::string>()});
    }
    out.push_back(std::move(set));
  });
  return out;
}

}  // namespace ccl
