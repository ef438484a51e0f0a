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

#include "ccl/embedstore.h"

#include <bit>
#include <cmath>
#include <cstring>
#include <nlohmann/json.hpp>

#include "ccl/error.h"
#include "ccl/random.h"
#include "ccl/util.h"

namespace ccl {

using json = nlohmann::json;

std::string DescribeKey(const EmbeddingKey &key) {
  return std::string(Prefix(key.mode)) + key.text;
}

namespace {

double Norm(Vec v) {
  double s = 0.0;
  for (float x : v) s += static_cast<double>(x) * x;
  return std::sqrt(s);
}

uint32_t ToLittleEndian(uint32_t v) {
  if constexpr (std::endian::native == std::endian::big) {
    return ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) | (v >> 24);
  }
  return v;
}

std::string MetaPath(const std::string &base) { return base + ".meta.jsonl"; }
std::string VecPath(const std::string &base) { return base + ".vec"; }

[[noreturn]] void Format(const std::string &what, long line = -1) {
  throw Error(ErrorCode::kFormatError, what, line);
}

}  // namespace

std::vector<float> MockEncode(std::string_view text, EncodingMode mode, int dim,
                              uint64_t seed) {
  if (dim < 2) throw Error(ErrorCode::kPrecondition, "mock encoder needs dim >= 2");
  std::string keyed(Prefix(mode));
  keyed.append(text);
  CounterRng rng(DeriveSeed(seed, keyed));
  std::vector<double> g(dim);
  double ss = 0.0;
  for (double &x : g) {
    x = rng.StandardNormal();
    ss += x * x;
  }
  const double inv = 1.0 / std::sqrt(ss);
  std::vector<float> out(dim);
  for (int k = 0; k < dim; ++k) out[k] = static_cast<float>(g[k] * inv);
  return out;
}

MockEncoder::MockEncoder(int dim, uint64_t seed) : dim_(dim), seed_(seed) {
  if (dim < 2) throw Error(ErrorCode::kPrecondition, "mock encoder needs dim >= 2");
}

std::string MockEncoder::id() const {
  return "mock:dim=" + std::to_string(dim_) + ":seed=" + std::to_string(seed_);
}

std::vector<float> MockEncoder::Encode(std::string_view text, EncodingMode mode) const {
  if (Trim(text).empty()) throw Error(ErrorCode::kPrecondition, "empty text");
  return MockEncode(text, mode, dim_, seed_);
}

const float *EmbeddingStore::Find(const EmbeddingKey &key) const {
  auto it = index_.find(key);
  if (it == index_.end()) return nullptr;
  return data_.data() + it->second * dim_;
}

Vec EmbeddingStore::Row(const EmbeddingKey &key) const {
  const float *p = Find(key);
  if (p == nullptr) throw Error(ErrorCode::kMissingEmbedding, DescribeKey(key));
  return {p, static_cast<size_t>(dim_)};
}

Vec EmbeddingStore::Row(std::string_view text, EncodingMode mode) const {
  return Row(EmbeddingKey{std::string(text), mode});
}

EmbeddingStore::Builder::Builder(int dim, std::string encoder_id) {
  if (dim < 1) throw Error(ErrorCode::kPrecondition, "dim must be >= 1");
  store_.dim_ = dim;
  store_.encoder_id_ = std::move(encoder_id);
}

EmbeddingStore::Builder &EmbeddingStore::Builder::Add(EmbeddingKey key, Vec vector) {
  if (!key.mode.valid()) Format("speaker token on after-mode key " + key.text);
  if (static_cast<int>(vector.size()) != store_.dim_) {
    throw Error(ErrorCode::kDimMismatch, "expected dim " + std::to_string(store_.dim_) +
                                             ", got " + std::to_string(vector.size()));
  }
  const double n = Norm(vector);
  if (!(std::abs(n - 1.0) <= kUnitNormTolerance)) {
    throw Error(ErrorCode::kNormError, "norm " + std::to_string(n) + " for " + DescribeKey(key),
                static_cast<long>(store_.keys_.size()));
  }
  const size_t row = store_.keys_.size();
  if (!store_.index_.emplace(key, row).second) Format("duplicate key " + DescribeKey(key));
  store_.keys_.push_back(std::move(key));
  store_.data_.insert(store_.data_.end(), vector.begin(), vector.end());
  return *this;
}

EmbeddingStore::Builder &EmbeddingStore::Builder::AddEncoded(const Encoder &encoder,
                                                             std::span<const EmbeddingKey> keys) {
  for (const EmbeddingKey &key : keys) {
    if (Contains(key)) continue;
    std::vector<float> v = encoder.Encode(key.text, key.mode);
    Add(key, v);
  }
  return *this;
}

EmbeddingStore EmbeddingStore::Builder::Build() && { return std::move(store_); }

void WriteStore(const EmbeddingStore &store, const std::string &base_path) {
  std::string meta = json{{"dim", store.dim()},
                          {"count", store.size()},
                          {"encoder_id", store.encoder_id()}}
                         .dump();
  meta += '\n';
  std::string vec;
  vec.resize(store.size() * store.dim() * sizeof(float));
  char *dst = vec.data();
  for (size_t r = 0; r < store.size(); ++r) {
    const EmbeddingKey &k = store.KeyAt(r);
    meta += json{{"text", k.text},
                 {"direction", DirectionName(k.mode.direction)},
                 {"speaker", SpeakerName(k.mode.speaker)},
                 {"row", r}}
                .dump();
    meta += '\n';
    for (float x : store.RowAt(r)) {
      uint32_t bits = ToLittleEndian(std::bit_cast<uint32_t>(x));
      std::memcpy(dst, &bits, sizeof(bits));
      dst += sizeof(bits);
    }
  }
  WriteFileAtomic(VecPath(base_path), vec);
  WriteFileAtomic(MetaPath(base_path), meta);
}

bool StoreFilesExist(const std::string &base_path) {
  return FileExists(MetaPath(base_path)) && FileExists(VecPath(base_path));
}

EmbeddingStore ReadStore(const std::string &base_path) {
  const std::string meta_raw = ReadFile(MetaPath(base_path));
  const std::string vec_raw = ReadFile(VecPath(base_path));
  std::vector<std::string_view> lines = SplitLines(meta_raw);
  if (lines.empty()) Format("empty meta file");

  json header;
  try {
    header = json::parse(lines[0]);
  } catch (const json::parse_error &e) {
    Format(e.what(), 1);
  }
  int dim = 0;
  size_t count = 0;
  std::string encoder_id;
  try {
    dim = header.at("dim").get<int>();
    count = header.at("count").get<size_t>();
    encoder_id = header.value("encoder_id", "");
  } catch (const json::exception &e) {
    Format(e.what(), 1);
  }
  if (dim < 1) Format("dim must be >= 1", 1);
  if (vec_raw.size() != count * static_cast<size_t>(dim) * sizeof(float)) {
    Format("meta count " + std::to_string(count) + " x dim " + std::to_string(dim) +
           " does not match " + std::to_string(vec_raw.size()) + " bytes of vectors");
  }

  EmbeddingStore store;
  store.dim_ = dim;
  store.encoder_id_ = std::move(encoder_id);
  store.keys_.resize(count);
  std::vector<bool> filled(count, false);
  size_t records = 0;
  for (size_t ln = 1; ln < lines.size(); ++ln) {
    if (Trim(lines[ln]).empty()) continue;
    const long line_no = static_cast<long>(ln + 1);
    EmbeddingKey key;
    size_t row = 0;
    try {
      json rec = json::parse(lines[ln]);
      key.text = rec.at("text").get<std::string>();
      key.mode.direction = ParseDirection(rec.at("direction").get<std::string>());
      const json &sp = rec.at("speaker");
      key.mode.speaker = sp.is_null() ? SpeakerToken::kNone : ParseSpeaker(sp.get<std::string>());
      row = rec.at("row").get<size_t>();
    } catch (const json::exception &e) {
      Format(e.what(), line_no);
    } catch (const Error &e) {
      Format(e.what(), line_no);
    }
    if (!key.mode.valid()) Format("speaker token on after-mode record", line_no);
    if (row >= count || filled[row]) Format("row out of range or reused", line_no);
    if (!store.index_.emplace(key, row).second) Format("duplicate key " + DescribeKey(key), line_no);
    filled[row] = true;
    store.keys_[row] = std::move(key);
    ++records;
  }
  if (records != count) {
    Format("meta lists " + std::to_string(records) + " records, header says " +
           std::to_string(count));
  }

  store.data_.resize(count * dim);
  const char *src = vec_raw.data();
  for (float &x : store.data_) {
    uint32_t bits;
    std::memcpy(&bits, src, sizeof(bits));
    src += sizeof(bits);
    x = std::bit_cast<float>(ToLittleEndian(bits));
  }
  for (size_t r = 0; r < count; ++r) {
    float *row = store.data_.data() + r * dim;
    const double n = Norm({row, static_cast<size_t>(dim)});
    const double dev = std::abs(n - 1.0);
    if (!(dev <= kRenormalizeLimit)) {
      throw Error(ErrorCode::kNormError, "norm " + std::to_string(n), static_cast<long>(r));
    }
    if (dev > kUnitNormTolerance) {
      for (int k = 0; k < dim; ++k) row[k] = static_cast<float>(row[k] / n);
      ++store.norm_warnings_;
    }
  }
  return store;
}

StoreEncoder::StoreEncoder(std::shared_ptr<const EmbeddingStore> store)
    : store_(std::move(store)) {}

std::vector<float> StoreEncoder::Encode(std::string_view text, EncodingMode mode) const {
  const float *p = store_->Find({std::string(text), mode});
  if (p == nullptr) {
    throw Error(ErrorCode::kEncoderUnavailable,
                "source store lacks " + DescribeKey({std::string(text), mode}));
  }
  return {p, p + store_->dim()};
}

std::vector<EmbeddingKey> ParseRequestsJsonl(std::string_view raw) {
  std::vector<EmbeddingKey> out;
  long line_no = 0;
  for (std::string_view line : SplitLines(raw)) {
    ++line_no;
    if (Trim(line).empty()) continue;
    try {
      json rec = json::parse(line);
      if (rec.contains("_meta")) continue;
      EmbeddingKey key;
      key.text = rec.at("text").get<std::string>();
      key.mode.direction = ParseDirection(rec.at("direction").get<std::string>());
      auto sp = rec.find("speaker");
      key.mode.speaker = (sp == rec.end() || sp->is_null())
                             ? SpeakerToken::kNone
                             : ParseSpeaker(sp->get<std::string>());
      if (!key.mode.valid()) Format("speaker token on after-mode request", line_no);
      out.push_back(std::move(key));
    } catch (const json::parse_error &e) {
      throw Error(ErrorCode::kParseError, e.what(), line_no);
    } catch (const json::exception &e) {
      throw Error(ErrorCode::kSchemaError, e.what(), line_no);
    }
  }
  return out;
}

std::string RequestsToJsonl(std::span<const EmbeddingKey> keys) {
  std::string out;
  for (const EmbeddingKey &k : keys) {
    out += json{{"text", k.text},
                {"direction", DirectionName(k.mode.direction)},
                {"speaker", SpeakerName(k.mode.speaker)}}
               .dump();
    out += '\n';
  }
  return out;
}

}  // namespace ccl
