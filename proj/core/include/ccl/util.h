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

#ifndef CCL_UTIL_H_
#define CCL_UTIL_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace ccl {

inline constexpr std::string_view kToolVersion = "ccl 1.0.0";

// Text helpers.
std::string_view Trim(std::string_view s);
std::vector<std::string_view> SplitWhitespace(std::string_view s);
std::vector<std::string_view> SplitLines(std::string_view s);
std::string ToLower(std::string_view s);

// File helpers. ReadFile and WriteFileAtomic throw Error(kIoError).
bool FileExists(const std::string &path);
std::string ReadFile(const std::string &path);

// Writes to `<path>.tmp.<pid>` then renames over `path`, so readers never
// see a truncated file.
void WriteFileAtomic(const std::string &path, std::string_view contents);

// 64-bit FNV-1a; used for input digests and seed derivation.
uint64_t Fnv1a64(std::string_view bytes, uint64_t basis = 0xcbf29ce484222325ULL);
std::string Hex64(uint64_t v);

// Runs fn(i) for i in [0, n) on up to `workers` threads. Each index is
// visited exactly once; callers write into pre-sized slots, so results do
// not depend on scheduling. The first exception thrown is rethrown.
void ParallelFor(size_t n, int workers, const std::function<void(size_t)> &fn);

int DefaultWorkers();

}  // namespace ccl

#endif  // CCL_UTIL_H_
