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

#ifndef CCL_RANDOM_H_
#define CCL_RANDOM_H_

#include <cstdint>
#include <string_view>

namespace ccl {

// SplitMix64 finalizer.
constexpr uint64_t Mix64(uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Sub-seed for a named stream, e.g. one per dialogue id.
uint64_t DeriveSeed(uint64_t seed, std::string_view name);

// Counter-based generator: draw k is Mix64(key ^ Mix64(k)). Output depends
// only on (key, k), so sequences are identical on every platform and do not
// depend on how work is split between threads. The standard library's
// distributions are implementation-defined, hence the explicit samplers.
class CounterRng {
 public:
  explicit CounterRng(uint64_t key) : key_(key) {}

  uint64_t NextU64() { return Mix64(key_ ^ Mix64(counter_++)); }

  // Uniform in [0, bound); bound > 0. Rejection keeps it unbiased.
  uint64_t UniformBelow(uint64_t bound);

  // Uniform in [0, 1) with 53 random bits.
  double UniformDouble() {
    return static_cast<double>(NextU64() >> 11) * 0x1.0p-53;
  }

  // Box-Muller; consumes two uniforms per call.
  double StandardNormal();

  uint64_t counter() const { return counter_; }

 private:
  uint64_t key_;
  uint64_t counter_ = 0;
};

}  // namespace ccl

#endif  // CCL_RANDOM_H_
