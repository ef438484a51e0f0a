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

#ifndef CCL_EMBEDSTORE_H_
#define CCL_EMBEDSTORE_H_

#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ccl/encoding_mode.h"

namespace ccl {

using Vec = std::span<const float>;

struct EmbeddingKey {
  std::string text;
  EncodingMode mode;

  auto operator<=>(const EmbeddingKey &) const = default;
};

std::string DescribeKey(const EmbeddingKey &key);

inline constexpr double kUnitNormTolerance = 1e-5;
inline constexpr double kRenormalizeLimit = 1e-3;

// The encoder boundary. Implementations return unit-norm vectors of a fixed
// dimension and are deterministic for a fixed (text, mode).
class Encoder {
 public:
  virtual ~Encoder() = default;
  virtual int dim() const = 0;
  virtual std::string id() const = 0;
  // Throws Error(kEncoderUnavailable) when the text cannot be encoded.
  virtual std::vector<float> Encode(std::string_view text, EncodingMode mode) const = 0;
};

// Normalized standard-normal draws keyed by (seed, prefix + text). A test
// double: cosines between distinct texts concentrate around 0.
std::vector<float> MockEncode(std::string_view text, EncodingMode mode, int dim,
                              uint64_t seed);

class MockEncoder : public Encoder {
 public:
  MockEncoder(int dim, uint64_t seed);
  int dim() const override { return dim_; }
  std::string id() const override;
  std::vector<float> Encode(std::string_view text, EncodingMode mode) const override;

 private:
  int dim_;
  uint64_t seed_;
};

// Immutable vector store. Rows are contiguous float32, row-major.
class EmbeddingStore {
 public:
  class Builder;

  int dim() const { return dim_; }
  size_t size() const { return keys_.size(); }
  const std::string &encoder_id() const { return encoder_id_; }
  // Number of rows re-normalized while reading from disk.
  size_t norm_warnings() const { return norm_warnings_; }

  // Null-object lookup; Row() throws Error(kMissingEmbedding).
  const float *Find(const EmbeddingKey &key) const;
  Vec Row(const EmbeddingKey &key) const;
  Vec Row(std::string_view text, EncodingMode mode) const;
  bool Contains(const EmbeddingKey &key) const { return Find(key) != nullptr; }

  Vec RowAt(size_t row) const { return {data_.data() + row * dim_, static_cast<size_t>(dim_)}; }
  const EmbeddingKey &KeyAt(size_t row) const { return keys_[row]; }

 private:
  friend EmbeddingStore ReadStore(const std::string &base_path);

  int dim_ = 0;
  std::string encoder_id_;
  std::vector<EmbeddingKey> keys_;
  std::vector<float> data_;
  std::map<EmbeddingKey, size_t> index_;
  size_t norm_warnings_ = 0;
};

class EmbeddingStore::Builder {
 public:
  Builder(int dim, std::string encoder_id);

  // Throws kDimMismatch, kNormError (norm off by more than 1e-5), or
  // kFormatError for a duplicate key or an invalid mode.
  Builder &Add(EmbeddingKey key, Vec vector);
  // Encodes and adds every key that is not present yet.
  Builder &AddEncoded(const Encoder &encoder, std::span<const EmbeddingKey> keys);
  bool Contains(const EmbeddingKey &key) const { return store_.Contains(key); }

  EmbeddingStore Build() &&;

 private:
  EmbeddingStore store_;
};

// Wire format: `<base>.meta.jsonl` (header {"dim","count","encoder_id"} then
// one {"text","direction","speaker","row"} per record) and `<base>.vec`
// (little-endian float32, row r at byte offset r * dim * 4).
void WriteStore(const EmbeddingStore &store, const std::string &base_path);

// Validates the pair of files. Rows whose norm is off by more than 1e-3
// raise Error(kNormError, row); smaller deviations above 1e-5 are
// re-normalized and counted in norm_warnings(). Missing files raise
// kIoError, inconsistent ones kFormatError.
EmbeddingStore ReadStore(const std::string &base_path);

bool StoreFilesExist(const std::string &base_path);

// Serves lookups from an existing store; keys it lacks are unavailable.
class StoreEncoder : public Encoder {
 public:
  explicit StoreEncoder(std::shared_ptr<const EmbeddingStore> store);
  int dim() const override { return store_->dim(); }
  std::string id() const override { return store_->encoder_id(); }
  std::vector<float> Encode(std::string_view text, EncodingMode mode) const override;

 private:
  std::shared_ptr<const EmbeddingStore> store_;
};

// Request lists: one {"text","direction","speaker"} per line.
std::vector<EmbeddingKey> ParseRequestsJsonl(std::string_view raw);
std::string RequestsToJsonl(std::span<const EmbeddingKey> keys);

}  // namespace ccl

#endif  // CCL_EMBEDSTORE_H_
