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

#include "ccl/pairgen.h"

#include <algorithm>
#include <nlohmann/json.hpp>
#include <set>
#include <tuple>

#include "ccl/encoding_mode.h"
#include "ccl/error.h"
#include "ccl/random.h"
#include "ccl/util.h"

namespace ccl {

using json = nlohmann::json;

PairMode ParsePairMode(std::string_view name) {
  if (name == "curved") return PairMode::kCurved;
  if (name == "speaker") return PairMode::kCurvedSpeaker;
  if (name == "ab5") return PairMode::kBinaryWindow;
  if (name == "ab2") return PairMode::kBinaryAdjacent;
  throw Error(ErrorCode::kPrecondition, "unknown pair mode \"" + std::string(name) + "\"");
}

std::string_view PairModeName(PairMode mode) {
  switch (mode) {
    case PairMode::kCurved: return "curved";
    case PairMode::kCurvedSpeaker: return "speaker";
    case PairMode::kBinaryWindow: return "ab5";
    case PairMode::kBinaryAdjacent: return "ab2";
  }
  return "curved";
}

std::string_view PairKindName(PairKind kind) {
  switch (kind) {
    case PairKind::kPositive: return "positive";
    case PairKind::kSwapNegative: return "swap_negative";
    case PairKind::kRandomNegative: return "random_negative";
  }
  return "positive";
}

PairKind ParsePairKind(std::string_view name) {
  if (name == "positive") return PairKind::kPositive;
  if (name == "swap_negative") return PairKind::kSwapNegative;
  if (name == "random_negative") return PairKind::kRandomNegative;
  throw Error(ErrorCode::kFormatError, "unknown pair kind \"" + std::string(name) + "\"");
}

RandomPool::RandomPool(std::span<const std::string> texts, size_t exclude_begin,
                       size_t exclude_end)
    : texts_(texts), exclude_begin_(exclude_begin), exclude_end_(exclude_end) {
  if (exclude_begin_ > exclude_end_ || exclude_end_ > texts_.size()) {
    throw Error(ErrorCode::kPrecondition, "bad pool exclusion range");
  }
}

namespace {

std::string Join(std::string_view prefix, std::string_view text) {
  std::string s;
  s.reserve(prefix.size() + text.size());
  s.append(prefix).append(text);
  return s;
}

std::string_view ParityPrefix(int i) {
  return i % 2 == 0 ? kEvenBeforePrefix : kOddBeforePrefix;
}

void CheckMode(const PairGenConfig &cfg, std::initializer_list<PairMode> allowed) {
  if (std::find(allowed.begin(), allowed.end(), cfg.mode) == allowed.end()) {
    throw Error(ErrorCode::kPrecondition,
                "pair mode " + std::string(PairModeName(cfg.mode)) + " not handled here");
  }
  if (cfg.window < 1) throw Error(ErrorCode::kPrecondition, "window must be >= 1");
  if (cfg.random_negatives < 0) {
    throw Error(ErrorCode::kPrecondition, "random_negatives must be >= 0");
  }
}

const std::string &Draw(CounterRng &rng, const RandomPool &pool) {
  if (pool.empty()) throw Error(ErrorCode::kEmptyRandomPool, "no random utterances");
  return pool.at(rng.UniformBelow(pool.size()));
}

// Shared window walk; the three public modes differ only in the positive
// target, the reach of i, and the before-side tokens.
std::vector<TrainingPair> Generate(const Dialogue &d, const PairGenConfig &cfg,
                                   const RandomPool &pool) {
  const bool speaker = cfg.mode == PairMode::kCurvedSpeaker;
  const bool binary =
      cfg.mode == PairMode::kBinaryWindow || cfg.mode == PairMode::kBinaryAdjacent;
  const int reach = cfg.mode == PairMode::kBinaryAdjacent ? 1 : cfg.window;
  const double l = cfg.window;

  CounterRng rng(DeriveSeed(cfg.seed, d.id));
  std::vector<TrainingPair> out;
  const int n = static_cast<int>(d.turns.size());
  for (int a = 0; a < n; ++a) {
    const std::string &u0 = d.turns[a].text;
    for (int i = 1; i <= reach && a + i < n; ++i) {
      const std::string &ui = d.turns[a + i].text;
      const std::string_view before = speaker ? ParityPrefix(i) : kBeforePrefix;
      const double target = binary ? 1.0 : (l - i) / l;
      out.push_back({Join(before, u0), Join(kAfterPrefix, ui), target, PairKind::kPositive});
      out.push_back({Join(before, ui), Join(kAfterPrefix, u0), 0.0, PairKind::kSwapNegative});
      for (int k = 0; k < cfg.random_negatives; ++k) {
        if (speaker) {
          // Four equiprobable (token, side) combinations around u[i].
          const uint64_t combo = rng.UniformBelow(4);
          const std::string &r = Draw(rng, pool);
          const std::string_view tok = (combo & 1) ? kEvenBeforePrefix : kOddBeforePrefix;
          if (combo < 2) {
            out.push_back({Join(tok, ui), Join(kAfterPrefix, r), 0.0, PairKind::kRandomNegative});
          } else {
            out.push_back({Join(tok, r), Join(kAfterPrefix, ui), 0.0, PairKind::kRandomNegative});
          }
        } else {
          const std::string &r = Draw(rng, pool);
          if (k % 2 == 0) {
            out.push_back({Join(kBeforePrefix, u0), Join(kAfterPrefix, r), 0.0,
                           PairKind::kRandomNegative});
          } else {
            out.push_back({Join(kBeforePrefix, r), Join(kAfterPrefix, u0), 0.0,
                           PairKind::kRandomNegative});
          }
        }
      }
    }
  }
  return out;
}

}  // namespace

std::vector<TrainingPair> CurvedPairs(const Dialogue &d, const PairGenConfig &cfg,
                                      const RandomPool &pool) {
  CheckMode(cfg, {PairMode::kCurved});
  return Generate(d, cfg, pool);
}

std::vector<TrainingPair> SpeakerPairs(const Dialogue &d, const PairGenConfig &cfg,
                                       const RandomPool &pool) {
  CheckMode(cfg, {PairMode::kCurvedSpeaker});
  return Generate(d, cfg, pool);
}

std::vector<TrainingPair> BinaryPairs(const Dialogue &d, const PairGenConfig &cfg,
                                      const RandomPool &pool) {
  CheckMode(cfg, {PairMode::kBinaryWindow, PairMode::kBinaryAdjacent});
  return Generate(d, cfg, pool);
}

std::vector<TrainingPair> DialoguePairs(const Dialogue &d, const PairGenConfig &cfg,
                                        const RandomPool &pool) {
  switch (cfg.mode) {
    case PairMode::kCurved: return CurvedPairs(d, cfg, pool);
    case PairMode::kCurvedSpeaker: return SpeakerPairs(d, cfg, pool);
    case PairMode::kBinaryWindow:
    case PairMode::kBinaryAdjacent: return BinaryPairs(d, cfg, pool);
  }
  return {};
}

std::vector<TrainingPair> CorpusPairs(const Corpus &c, const PairGenConfig &cfg,
                                      int workers) {
  std::vector<std::string> texts;
  std::vector<size_t> offsets;
  offsets.reserve(c.dialogues.size() + 1);
  for (const Dialogue &d : c.dialogues) {
    offsets.push_back(texts.size());
    for (const Utterance &u : d.turns) texts.push_back(u.text);
  }
  offsets.push_back(texts.size());

  std::vector<std::vector<TrainingPair>> per_dialogue(c.dialogues.size());
  ParallelFor(c.dialogues.size(), workers, [&](size_t k) {
    RandomPool pool(texts, offsets[k], offsets[k + 1]);
    per_dialogue[k] = DialoguePairs(c.dialogues[k], cfg, pool);
  });

  std::vector<TrainingPair> out;
  for (auto &v : per_dialogue) {
    out.insert(out.end(), std::make_move_iterator(v.begin()), std::make_move_iterator(v.end()));
  }
  if (cfg.dedup) out = DedupPairs(std::move(out));
  return out;
}

std::vector<TrainingPair> DedupPairs(std::vector<TrainingPair> pairs) {
  using Key = std::tuple<std::string_view, std::string_view, double, PairKind>;
  std::set<Key> seen;
  std::vector<bool> keep(pairs.size());
  for (size_t k = 0; k < pairs.size(); ++k) {
    const TrainingPair &p = pairs[k];
    keep[k] = seen.emplace(p.sentence_a, p.sentence_b, p.score, p.kind).second;
  }
  std::vector<TrainingPair> out;
  for (size_t k = 0; k < pairs.size(); ++k) {
    if (keep[k]) out.push_back(std::move(pairs[k]));
  }
  return out;
}

std::string PairsToJsonl(std::span<const TrainingPair> pairs) {
  std::string out;
  for (const TrainingPair &p : pairs) {
    json obj = {{"sentence_a", p.sentence_a},
                {"sentence_b", p.sentence_b},
                {"score", p.score},
                {"kind", PairKindName(p.kind)}};
    out += obj.dump();
    out += '\n';
  }
  return out;
}

std::vector<TrainingPair> ParsePairsJsonl(std::string_view raw) {
  std::vector<TrainingPair> out;
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
    if (obj.contains("_meta")) continue;
    try {
      out.push_back({obj.at("sentence_a").get<std::string>(),
                     obj.at("sentence_b").get<std::string>(), obj.at("score").get<double>(),
                     ParsePairKind(obj.at("kind").get<std::string>())});
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kSchemaError, e.what(), line_no);
    }
  }
  return out;
}

size_t ExportPairs(std::span<const TrainingPair> pairs, const std::string &path,
                   std::string_view header_line) {
  std::string body;
  if (!header_line.empty()) {
    body.append(header_line);
    body += '\n';
  }
  body += PairsToJsonl(pairs);
  WriteFileAtomic(path, body);
  return pairs.size();
}

}  // namespace ccl
