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

#include "cli.h"

#include <CLI11.hpp>
#include <algorithm>
#include <filesystem>
#include <memory>
#include <nlohmann/json.hpp>
#include <set>

#include "ccl/bm25.h"
#include "ccl/corpus.h"
#include "ccl/embedstore.h"
#include "ccl/error.h"
#include "ccl/evaluate.h"
#include "ccl/pairgen.h"
#include "ccl/samples.h"
#include "ccl/util.h"
#include "render.h"

namespace ccl::cli {

namespace {

using json = nlohmann::json;

class MissingStore : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct Options {
  int workers = DefaultWorkers();
  uint64_t seed = 42;

  std::string in;
  std::string out;
  std::string format = "auto";
  std::string test_out;
  size_t max_tokens = 200;
  size_t split_tail = 0;
  bool filter_before_merge = false;
  bool no_merge = false;

  std::string mode = "curved";
  int window = 5;
  int random_negatives = 2;
  bool dedup = false;

  std::string corpus;
  std::string eval_config;
  std::string samples_prefix;

  std::string requests;
  std::string encoder = "mock";
  std::string source;
  int dim = 384;

  std::string store;
  std::string samples;
  std::string method = "iec";
  std::string variant = "full";
  std::string aggregation = "sum";
  bool speaker_mode = false;
  std::vector<double> weights = {1.0, -0.5, -1.0};
  double k1 = 1.5;
  double b = 0.75;

  int max_h_l = 10;
};

// Reads input files and remembers their digests for the _meta header.
class Inputs {
 public:
  std::string Read(const std::string &path) {
    std::string raw = ReadFile(path);
    digests_[path] = Hex64(Fnv1a64(raw));
    return raw;
  }
  void Digest(const std::string &path) { Read(path); }
  const json &digests() const { return digests_; }

 private:
  json digests_ = json::object();
};

json Meta(const std::string &command, const Options &o, const Inputs &in, const json &config) {
  return {{"tool", std::string(kToolVersion)},
          {"command", command},
          {"seed", o.seed},
          {"inputs", in.digests()},
          {"config", config}};
}

std::string MetaLine(const json &meta) { return json{{"_meta", meta}}.dump(); }

int ExitCodeFor(ErrorCode code) {
  switch (code) {
    case ErrorCode::kMissingEmbedding:
    case ErrorCode::kEncoderUnavailable:
      return kExitMissingEmbeddings;
    case ErrorCode::kEmptyCorpus:
    case ErrorCode::kParseError:
    case ErrorCode::kSchemaError:
    case ErrorCode::kMissingDomainTag:
    case ErrorCode::kIoError:
    case ErrorCode::kFormatError:
    case ErrorCode::kNormError:
    case ErrorCode::kDimMismatch:
    case ErrorCode::kDuplicateCandidate:
    case ErrorCode::kCandidateFileMissing:
      return kExitMalformedInput;
    default:
      return kExitFailure;
  }
}

std::string FixedPct(double ratio) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f%%", 100.0 * ratio);
  return buf;
}

std::string Fixed(double v, int digits) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.*f", digits, v);
  return buf;
}

Corpus LoadCorpus(Inputs &in, const std::string &path, const std::string &format) {
  const std::string raw = in.Read(path);
  const std::string name = std::filesystem::path(path).stem().string();
  const bool jsonl = format == "jsonl" || (format == "auto" && path.ends_with(".jsonl"));
  return jsonl ? ParseJsonlDialogues(raw, name) : ParseDailyDialog(raw, name);
}

EmbeddingStore LoadStore(Inputs &in, const std::string &base, std::ostream &err) {
  if (!StoreFilesExist(base)) {
    throw MissingStore("store files not found: " + base + ".meta.jsonl / " + base + ".vec");
  }
  in.Digest(base + ".meta.jsonl");
  in.Digest(base + ".vec");
  EmbeddingStore store = ReadStore(base);
  if (store.norm_warnings() > 0) {
    err << "ccl: warning: re-normalized " << store.norm_warnings() << " rows of " << base << "\n";
  }
  return store;
}

// Fails once with the number of absent keys instead of on the first lookup.
void CheckKeys(const EmbeddingStore &store, const std::vector<EmbeddingKey> &keys) {
  std::set<EmbeddingKey> missing;
  for (const EmbeddingKey &k : keys) {
    if (!store.Contains(k)) missing.insert(k);
  }
  if (missing.empty()) return;
  throw Error(ErrorCode::kMissingEmbedding, std::to_string(missing.size()) +
                                                " keys absent from the store, first " +
                                                DescribeKey(*missing.begin()));
}

void WriteReport(const std::string &path, const RankingReport &r, std::string_view protocol,
                 const json &meta) {
  json j = ReportToJson(r);
  j["protocol_version"] = std::string(protocol);
  j["config"] = meta["config"];
  j["parity_pooling"] = "n-weighted";
  j["_meta"] = meta;
  WriteFileAtomic(path, j.dump(2) + "\n");
}

std::string Summary(const RankingReport &r) {
  std::string s = r.task + ": n=" + std::to_string(r.n);
  for (const auto &[k, v] : r.hits_at) s += " Hits@" + std::to_string(k) + "=" + FixedPct(v);
  if (r.reverse_hits_at_1) s += " reverse=" + FixedPct(*r.reverse_hits_at_1);
  s += " avg_rank=" + Fixed(r.average_rank, 2);
  if (r.mean_normalized_rank) s += " norm_rank=" + Fixed(*r.mean_normalized_rank, 4);
  return s + "\n";
}

int RunPreprocess(const Options &o, std::ostream &out) {
  Inputs in;
  Corpus c = LoadCorpus(in, o.in, o.format);
  const size_t limit = o.max_tokens == 0 ? kNoTokenLimit : o.max_tokens;
  FilterResult f;
  if (o.no_merge) {
    f = FilterLong(c, limit);
  } else if (o.filter_before_merge) {
    f = FilterLong(c, limit);
    f.corpus = MergeConsecutiveTurns(f.corpus);
  } else {
    f = FilterLong(MergeConsecutiveTurns(c), limit);
  }
  const json config = {{"in", o.in},
                       {"format", o.format},
                       {"max_tokens", o.max_tokens},
                       {"merge", !o.no_merge},
                       {"filter_before_merge", o.filter_before_merge},
                       {"split_tail", o.split_tail}};
  const std::string meta = MetaLine(Meta("preprocess", o, in, config));
  if (o.split_tail > 0) {
    if (o.test_out.empty()) throw UsageError("--split-tail needs --test-out");
    CorpusSplit split = SplitTailPerDomain(f.corpus, o.split_tail);
    WriteFileAtomic(o.out, meta + "\n" + SerializeJsonl(split.train));
    WriteFileAtomic(o.test_out, meta + "\n" + SerializeJsonl(split.test));
    out << "preprocess: " << split.train.dialogues.size() << " train, "
        << split.test.dialogues.size() << " test dialogues, " << f.dropped << " dropped\n";
  } else {
    WriteFileAtomic(o.out, meta + "\n" + SerializeJsonl(f.corpus));
    out << "preprocess: " << f.corpus.dialogues.size() << " dialogues, " << f.dropped
        << " dropped\n";
  }
  return kExitOk;
}

int RunPairgen(const Options &o, std::ostream &out) {
  Inputs in;
  const Corpus c = LoadCorpus(in, o.in, o.format);
  PairGenConfig cfg;
  cfg.mode = ParsePairMode(o.mode);
  cfg.window = o.window;
  cfg.seed = o.seed;
  cfg.random_negatives = o.random_negatives;
  cfg.dedup = o.dedup;
  const std::vector<TrainingPair> pairs = CorpusPairs(c, cfg, o.workers);
  const json config = {{"in", o.in},
                       {"mode", o.mode},
                       {"window", o.window},
                       {"random_negatives", o.random_negatives},
                       {"dedup", o.dedup}};
  ExportPairs(pairs, o.out, MetaLine(Meta("pairgen", o, in, config)));
  std::map<PairKind, size_t> by_kind;
  for (const TrainingPair &p : pairs) ++by_kind[p.kind];
  out << "pairgen: " << pairs.size() << " pairs (" << by_kind[PairKind::kPositive] << " positive, "
      << by_kind[PairKind::kSwapNegative] << " swap, " << by_kind[PairKind::kRandomNegative]
      << " random)\n";
  return kExitOk;
}

// Eval config:
//   {"speaker_mode": bool,
//    "stp":  {"cells": [[h_l, g_d], ...], "candidates": path},
//    "ltp":  {"cells": [[h_l, g_d, fgid], ...], "methods": [...]},
//    "next": {"depths": [h_l, ...] | "max_h_l": k, "variants": [...]}}
int RunEmbedRequests(const Options &o, std::ostream &out) {
  Inputs in;
  const Corpus c = LoadCorpus(in, o.corpus, o.format);
  json cfg = json::object();
  if (!o.eval_config.empty()) {
    try {
      cfg = json::parse(in.Read(o.eval_config));
    } catch (const json::parse_error &e) {
      throw Error(ErrorCode::kParseError, o.eval_config + ": " + e.what());
    }
  }
  std::string prefix = o.samples_prefix;
  if (prefix.empty()) {
    prefix = o.out.ends_with(".jsonl") ? o.out.substr(0, o.out.size() - 6) : o.out;
  }

  std::set<EmbeddingKey> keys;
  auto add = [&](const std::vector<EmbeddingKey> &ks) { keys.insert(ks.begin(), ks.end()); };
  std::vector<std::pair<std::string, std::string>> files;  // path, body
  std::string summary;
  json generator;
  try {
    if (!cfg.is_object()) throw Error(ErrorCode::kSchemaError, "eval config must be an object");
    const bool speaker = cfg.value("speaker_mode", false);
    if (cfg.contains("stp")) {
      const json &stp = cfg.at("stp");
      const std::string cand_path = stp.at("candidates").get<std::string>();
      if (!FileExists(cand_path)) throw Error(ErrorCode::kCandidateFileMissing, cand_path);
      const CandidateIndex index = ParseCandidatesJsonl(in.Read(cand_path));
      generator = index.generator;
      std::vector<StpSample> all;
      size_t skipped = 0;
      for (const json &cell : stp.at("cells")) {
        StpBuild b = BuildStpSamples(c, cell.at(0).get<int>(), cell.at(1).get<int>(), &index);
        skipped += b.skipped_no_candidates;
        for (const StpSample &s : b.samples) add(StpKeys(s, speaker));
        all.insert(all.end(), b.samples.begin(), b.samples.end());
      }
      files.emplace_back(prefix + ".stp.jsonl", StpSamplesToJsonl(all));
      summary += " stp=" + std::to_string(all.size());
      if (skipped > 0) summary += " (skipped " + std::to_string(skipped) + " without candidates)";
    }
    if (cfg.contains("ltp")) {
      const json &ltp = cfg.at("ltp");
      std::vector<std::string> methods = {"iec", "iec-cu", "gc"};
      if (ltp.contains("methods")) methods = ltp["methods"].get<std::vector<std::string>>();
      std::vector<LtpSample> all;
      for (const json &cell : ltp.at("cells")) {
        std::vector<LtpSample> part = BuildLtpSamples(c, cell.at(0).get<int>(),
                                                      cell.at(1).get<int>(), cell.at(2).get<int>());
        for (const LtpSample &s : part) {
          for (const std::string &m : methods) add(LtpKeys(s, ParseLtpMethod(m), speaker));
        }
        all.insert(all.end(), part.begin(), part.end());
      }
      files.emplace_back(prefix + ".ltp.jsonl", LtpSamplesToJsonl(all));
      summary += " ltp=" + std::to_string(all.size());
    }
    if (cfg.contains("next")) {
      const json &next = cfg.at("next");
      std::vector<int> depths;
      if (next.contains("depths")) {
        depths = next["depths"].get<std::vector<int>>();
      } else {
        for (int h = 1; h <= next.value("max_h_l", 10); ++h) depths.push_back(h);
      }
      std::vector<std::string> variants = {"full", "last"};
      if (next.contains("variants")) variants = next["variants"].get<std::vector<std::string>>();
      std::vector<NextSampleSet> sets;
      size_t n = 0;
      for (int h : depths) {
        NextSampleSet set = BuildNextSamples(c, h);
        for (const std::string &v : variants) {
          if (v != "bm25") add(NextKeys(set, ParseNextVariant(v), speaker));
        }
        n += set.samples.size();
        sets.push_back(std::move(set));
      }
      files.emplace_back(prefix + ".next.jsonl", NextSetsToJsonl(sets));
      summary += " next=" + std::to_string(n);
    }
  } catch (const json::exception &e) {
    throw Error(ErrorCode::kSchemaError, o.eval_config + ": " + e.what());
  }

  json config = {{"corpus", o.corpus}, {"eval", cfg}};
  if (!generator.is_null()) config["generator"] = generator;
  const std::string meta = MetaLine(Meta("embed-requests", o, in, config));
  for (const auto &[path, body] : files) WriteFileAtomic(path, meta + "\n" + body);
  const std::vector<EmbeddingKey> sorted(keys.begin(), keys.end());
  WriteFileAtomic(o.out, meta + "\n" + RequestsToJsonl(sorted));
  out << "embed-requests: " << sorted.size() << " requests;" << (summary.empty() ? " no samples" : summary)
      << "\n";
  return kExitOk;
}

int RunEmbed(const Options &o, std::ostream &out, std::ostream &err) {
  Inputs in;
  const std::vector<EmbeddingKey> keys = ParseRequestsJsonl(in.Read(o.requests));
  std::unique_ptr<Encoder> encoder;
  if (o.encoder == "mock") {
    encoder = std::make_unique<MockEncoder>(o.dim, o.seed);
  } else {
    if (o.source.empty()) throw UsageError("--encoder store needs --source");
    encoder = std::make_unique<StoreEncoder>(
        std::make_shared<const EmbeddingStore>(LoadStore(in, o.source, err)));
  }
  EmbeddingStore::Builder builder(encoder->dim(), encoder->id());
  builder.AddEncoded(*encoder, keys);
  EmbeddingStore store = std::move(builder).Build();
  WriteStore(store, o.out);
  out << "embed: " << store.size() << " vectors, dim " << store.dim() << ", encoder "
      << store.encoder_id() << "\n";
  return kExitOk;
}

EvalOptions MakeEvalOptions(const Options &o) {
  EvalOptions opts;
  opts.speaker_mode = o.speaker_mode;
  opts.workers = o.workers;
  opts.weights = {o.weights[0], o.weights[1], o.weights[2]};
  opts.aggregation = o.aggregation == "mean" ? HistoryAggregation::kMean : HistoryAggregation::kSum;
  return opts;
}

int RunEvalStp(const Options &o, std::ostream &out, std::ostream &err) {
  Inputs in;
  const std::vector<StpSample> samples = ParseStpSamples(in.Read(o.samples));
  const EmbeddingStore store = LoadStore(in, o.store, err);
  std::vector<EmbeddingKey> keys;
  for (const StpSample &s : samples) {
    auto k = StpKeys(s, o.speaker_mode);
    keys.insert(keys.end(), k.begin(), k.end());
  }
  CheckKeys(store, keys);
  const RankingReport r = EvalStp(samples, store, MakeEvalOptions(o));
  const json config = {{"samples", o.samples}, {"store", o.store}, {"speaker_mode", o.speaker_mode},
                       {"encoder_id", store.encoder_id()}};
  WriteReport(o.out, r, kStpProtocol, Meta("eval-stp", o, in, config));
  out << Summary(r);
  return kExitOk;
}

int RunEvalLtp(const Options &o, std::ostream &out, std::ostream &err) {
  Inputs in;
  const LtpMethod method = ParseLtpMethod(o.method);
  const std::vector<LtpSample> samples = ParseLtpSamples(in.Read(o.samples));
  const EmbeddingStore store = LoadStore(in, o.store, err);
  std::vector<EmbeddingKey> keys;
  for (const LtpSample &s : samples) {
    auto k = LtpKeys(s, method, o.speaker_mode);
    keys.insert(keys.end(), k.begin(), k.end());
  }
  CheckKeys(store, keys);
  const RankingReport r = EvalLtp(samples, store, method, MakeEvalOptions(o));
  json config = {{"samples", o.samples}, {"store", o.store},   {"method", o.method},
                 {"speaker_mode", o.speaker_mode},            {"encoder_id", store.encoder_id()}};
  if (method != LtpMethod::kIec) config["aggregation"] = o.aggregation;
  if (method == LtpMethod::kIecCurving) config["weights"] = o.weights;
  WriteReport(o.out, r, kLtpProtocol, Meta("eval-ltp", o, in, config));
  out << Summary(r);
  return kExitOk;
}

int RunEvalNext(const Options &o, std::ostream &out, std::ostream &err) {
  Inputs in;
  const std::vector<NextSampleSet> sets = ParseNextSets(in.Read(o.samples));
  json config = {{"samples", o.samples}, {"variant", o.variant}};
  RankingReport r;
  if (o.variant == "bm25") {
    r = EvalNextBm25(sets, {o.k1, o.b}, o.workers);
    config["k1"] = o.k1;
    config["b"] = o.b;
  } else {
    const NextVariant variant = ParseNextVariant(o.variant);
    const EmbeddingStore store = LoadStore(in, o.store, err);
    std::vector<EmbeddingKey> keys;
    for (const NextSampleSet &set : sets) {
      auto k = NextKeys(set, variant, o.speaker_mode);
      keys.insert(keys.end(), k.begin(), k.end());
    }
    CheckKeys(store, keys);
    r = EvalNext(sets, store, variant, MakeEvalOptions(o));
    config["store"] = o.store;
    config["speaker_mode"] = o.speaker_mode;
    config["encoder_id"] = store.encoder_id();
  }
  WriteReport(o.out, r, kNextProtocol, Meta("eval-next", o, in, config));
  out << Summary(r);
  return kExitOk;
}

int RunBenchEncoding(const Options &o, std::ostream &out) {
  Inputs in;
  const Corpus c = LoadCorpus(in, o.corpus, o.format);
  const EncodingCost cost = EncodingCostReport(c, o.max_h_l);
  out << "context representations: " << cost.context_representations << "\n"
      << "utterances encoded (context mode): " << cost.utterances_encoded_context_mode << "\n"
      << "utterances encoded (relativistic): " << cost.utterances_encoded_relativistic << "\n"
      << "factor: " << Fixed(cost.factor, 2) << "\n";
  if (!o.out.empty()) {
    json per_depth = json::object();
    for (const auto &[h, n] : cost.samples_per_history_length) per_depth[std::to_string(h)] = n;
    const json config = {{"corpus", o.corpus}, {"max_h_l", o.max_h_l}};
    json j = {{"context_representations", cost.context_representations},
              {"utterances_encoded_context_mode", cost.utterances_encoded_context_mode},
              {"utterances_encoded_relativistic", cost.utterances_encoded_relativistic},
              {"factor", cost.factor},
              {"samples_per_history_length", per_depth},
              {"config", config},
              {"_meta", Meta("bench-encoding", o, in, config)}};
    WriteFileAtomic(o.out, j.dump(2) + "\n");
  }
  return kExitOk;
}

int RunReport(const Options &o, std::ostream &out) {
  Inputs in;
  json j;
  try {
    j = json::parse(in.Read(o.in));
  } catch (const json::parse_error &e) {
    throw Error(ErrorCode::kFormatError, o.in + ": " + e.what());
  }
  const RankingReport r = ReportFromJson(j);
  std::string text;
  if (o.format == "plotdata") {
    text = RenderPlotData(r);
  } else if (o.format == "csv") {
    text = RenderCsv(ReportTable(r));
  } else {
    text = RenderTable(ReportTable(r));
  }
  if (o.out.empty()) {
    out << text;
  } else {
    WriteFileAtomic(o.out, text);
  }
  return kExitOk;
}

// Rewrites `--config file.json` into flags placed right after the
// subcommand, skipping keys the command line already sets.
std::vector<std::string> ExpandConfig(const std::vector<std::string> &args) {
  std::vector<std::string> rest;
  std::string path;
  for (size_t k = 0; k < args.size(); ++k) {
    if (args[k] == "--config") {
      if (k + 1 >= args.size()) throw UsageError("--config needs a file");
      path = args[++k];
    } else if (args[k].starts_with("--config=")) {
      path = args[k].substr(9);
    } else {
      rest.push_back(args[k]);
    }
  }
  if (path.empty()) return rest;
  if (rest.empty() || rest[0].starts_with("-")) throw UsageError("--config needs a subcommand");
  json cfg;
  try {
    cfg = json::parse(ReadFile(path));
  } catch (const json::parse_error &e) {
    throw Error(ErrorCode::kParseError, path + ": " + e.what());
  }
  if (!cfg.is_object()) throw Error(ErrorCode::kSchemaError, path + ": config must be an object");

  auto given = [&](const std::string &flag) {
    return std::any_of(rest.begin(), rest.end(), [&](const std::string &a) {
      return a == flag || a.starts_with(flag + "=");
    });
  };
  std::vector<std::string> injected;
  for (const auto &[key, value] : cfg.items()) {
    std::string flag = "--" + key;
    std::replace(flag.begin(), flag.end(), '_', '-');
    if (given(flag)) continue;
    if (value.is_boolean()) {
      if (value.get<bool>()) injected.push_back(flag);
    } else if (value.is_string()) {
      injected.push_back(flag + "=" + value.get<std::string>());
    } else if (value.is_number()) {
      injected.push_back(flag + "=" + value.dump());
    } else if (value.is_array()) {
      std::string joined;
      for (const json &v : value) joined += (joined.empty() ? "" : ",") + (v.is_string() ? v.get<std::string>() : v.dump());
      injected.push_back(flag + "=" + joined);
    } else {
      throw Error(ErrorCode::kSchemaError, path + ": unsupported value for " + key);
    }
  }
  rest.insert(rest.begin() + 1, injected.begin(), injected.end());
  return rest;
}

}  // namespace

int RunCli(const std::vector<std::string> &raw_args, std::ostream &out, std::ostream &err) {
  Options o;
  std::string unused_config;
  CLI::App app{"Curved contrastive planning and ranking engine.", "ccl"};
  app.set_version_flag("--version", std::string(kToolVersion));
  app.require_subcommand(1, 1);

  auto common = [&](CLI::App *sub) {
    sub->add_option("--config", unused_config, "JSON file of flag values; command-line flags win");
  };
  auto workers = [&](CLI::App *sub) {
    sub->add_option("--workers", o.workers, "Parallel workers")->check(CLI::PositiveNumber)->capture_default_str();
  };
  const std::vector<std::string> formats = {"auto", "dailydialog", "jsonl"};

  CLI::App *preprocess = app.add_subcommand("preprocess", "Merge turns, filter long dialogues, split");
  common(preprocess);
  preprocess->add_option("--in", o.in, "Raw corpus (DailyDialog text or JSONL)")->required();
  preprocess->add_option("--out", o.out, "Output corpus JSONL")->required();
  preprocess->add_option("--format", o.format, "Input format")->check(CLI::IsMember(formats))->capture_default_str();
  preprocess->add_option("--max-tokens", o.max_tokens, "Drop dialogues with a longer utterance; 0 keeps all")->capture_default_str();
  preprocess->add_flag("--filter-before-merge", o.filter_before_merge, "Filter raw turns, then merge");
  preprocess->add_flag("--no-merge", o.no_merge, "Keep consecutive same-speaker turns");
  auto *split = preprocess->add_option("--split-tail", o.split_tail, "Move the last N dialogues per domain to --test-out");
  preprocess->add_option("--test-out", o.test_out, "Test split JSONL")->needs(split);

  CLI::App *pairgen = app.add_subcommand("pairgen", "Generate training pairs");
  common(pairgen);
  workers(pairgen);
  pairgen->add_option("--in", o.in, "Corpus")->required();
  pairgen->add_option("--out", o.out, "Pairs JSONL")->required();
  pairgen->add_option("--format", o.format, "Input format")->check(CLI::IsMember(formats))->capture_default_str();
  pairgen->add_option("--mode", o.mode, "curved, speaker, ab5 or ab2")
      ->check(CLI::IsMember({"curved", "speaker", "ab5", "ab2"}))->capture_default_str();
  pairgen->add_option("--window", o.window, "Window l")->check(CLI::PositiveNumber)->capture_default_str();
  pairgen->add_option("--random-negatives", o.random_negatives, "Random negatives per positive")
      ->check(CLI::NonNegativeNumber)->capture_default_str();
  pairgen->add_option("--seed", o.seed, "Seed")->capture_default_str();
  pairgen->add_flag("--dedup", o.dedup, "Drop exact duplicate rows");

  CLI::App *requests = app.add_subcommand("embed-requests", "List every embedding the evaluations need");
  common(requests);
  requests->add_option("--corpus", o.corpus, "Preprocessed corpus")->required();
  requests->add_option("--format", o.format, "Corpus format")->check(CLI::IsMember(formats))->capture_default_str();
  requests->add_option("--eval", o.eval_config, "Evaluation config JSON");
  requests->add_option("--out", o.out, "requests.jsonl")->required();
  requests->add_option("--samples-prefix", o.samples_prefix, "Prefix for <p>.stp/.ltp/.next.jsonl");

  CLI::App *embed = app.add_subcommand("embed", "Fulfil requests into a store");
  common(embed);
  embed->add_option("--requests", o.requests, "requests.jsonl")->required();
  embed->add_option("--out", o.out, "Store base path")->required();
  embed->add_option("--encoder", o.encoder, "mock or store")->check(CLI::IsMember({"mock", "store"}))->capture_default_str();
  embed->add_option("--dim", o.dim, "Mock dimension")->check(CLI::Range(2, 1 << 16))->capture_default_str();
  embed->add_option("--seed", o.seed, "Mock seed")->capture_default_str();
  embed->add_option("--source", o.source, "Existing store for --encoder store");

  auto eval_common = [&](CLI::App *sub, bool store_required) {
    common(sub);
    workers(sub);
    auto *st = sub->add_option("--store", o.store, "Store base path");
    if (store_required) st->required();
    sub->add_option("--samples", o.samples, "Sample file from embed-requests")->required();
    sub->add_option("--out", o.out, "Report JSON")->required();
    sub->add_flag("--speaker-mode", o.speaker_mode, "Use [E]/[O] before-side encodings");
  };
  CLI::App *eval_stp = app.add_subcommand("eval-stp", "Short-term planning");
  eval_common(eval_stp, true);

  CLI::App *eval_ltp = app.add_subcommand("eval-ltp", "Long-term planning");
  eval_common(eval_ltp, true);
  eval_ltp->add_option("--method", o.method, "iec, iec-cu or gc")
      ->check(CLI::IsMember({"iec", "iec-cu", "gc"}))->capture_default_str();
  eval_ltp->add_option("--aggregation", o.aggregation, "History aggregation: sum or mean")
      ->check(CLI::IsMember({"sum", "mean"}))->capture_default_str();
  eval_ltp->add_option("--weights", o.weights, "Curving weights first,second,third")
      ->delimiter(',')->expected(3)->capture_default_str();

  CLI::App *eval_next = app.add_subcommand("eval-next", "Next-utterance selection");
  eval_common(eval_next, false);
  eval_next->add_option("--variant", o.variant, "full, last or bm25")
      ->check(CLI::IsMember({"full", "last", "bm25"}))->capture_default_str();
  eval_next->add_option("--k1", o.k1, "BM25 k1")->capture_default_str();
  eval_next->add_option("--b", o.b, "BM25 b")->capture_default_str();

  CLI::App *bench = app.add_subcommand("bench-encoding", "Encoder work for next-utterance selection");
  common(bench);
  bench->add_option("--corpus", o.corpus, "Corpus")->required();
  bench->add_option("--format", o.format, "Corpus format")->check(CLI::IsMember(formats))->capture_default_str();
  bench->add_option("--max-hl", o.max_h_l, "Largest history length")->check(CLI::PositiveNumber)->capture_default_str();
  bench->add_option("--out", o.out, "Optional JSON output");

  CLI::App *report = app.add_subcommand("report", "Render a report");
  common(report);
  report->add_option("--in", o.in, "Report JSON")->required();
  report->add_option("--format", o.format, "table, csv or plotdata")
      ->check(CLI::IsMember({"table", "csv", "plotdata"}));
  report->add_option("--out", o.out, "Write here instead of stdout");

  std::string hint_target = "ccl";
  try {
    std::vector<std::string> args = ExpandConfig(raw_args);
    if (!args.empty() && !args[0].starts_with("-")) hint_target += " " + args[0];
    std::reverse(args.begin(), args.end());
    try {
      app.parse(args);
    } catch (const CLI::CallForHelp &) {
      const auto subs = app.get_subcommands();
      out << (subs.empty() ? app.help() : subs[0]->help());
      return kExitOk;
    } catch (const CLI::CallForVersion &) {
      out << kToolVersion << "\n";
      return kExitOk;
    } catch (const CLI::ParseError &e) {
      err << "ccl: " << e.what() << " (see '" << hint_target << " --help')\n";
      return kExitUsage;
    }
    if (report->parsed() && o.format == "auto") o.format = "table";

    if (preprocess->parsed()) return RunPreprocess(o, out);
    if (pairgen->parsed()) return RunPairgen(o, out);
    if (requests->parsed()) return RunEmbedRequests(o, out);
    if (embed->parsed()) return RunEmbed(o, out, err);
    if (eval_stp->parsed()) return RunEvalStp(o, out, err);
    if (eval_ltp->parsed()) return RunEvalLtp(o, out, err);
    if (eval_next->parsed()) {
      if (o.variant != "bm25" && o.store.empty()) throw UsageError("--store is required unless --variant bm25");
      return RunEvalNext(o, out, err);
    }
    if (bench->parsed()) return RunBenchEncoding(o, out);
    if (report->parsed()) return RunReport(o, out);
    return kExitUsage;
  } catch (const UsageError &e) {
    err << "ccl: " << e.what() << " (see '" << hint_target << " --help')\n";
    return kExitUsage;
  } catch (const MissingStore &e) {
    err << "ccl: " << e.what() << "\n";
    return kExitMissingEmbeddings;
  } catch (const Error &e) {
    err << "ccl: " << e.what() << "\n";
    return ExitCodeFor(e.code());
  } catch (const std::exception &e) {
    err << "ccl: " << e.what() << "\n";
    return kExitFailure;
  }
}

}  // namespace ccl::cli
