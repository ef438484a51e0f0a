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

#ifndef CCL_TESTS_ORACLES_GRAM_STORE_H_
#define CCL_TESTS_ORACLES_GRAM_STORE_H_

#include <vector>

namespace ccl::oracle {

// Unit vectors whose cosines approximate the curved-target structure of one
// dialogue with `n` turns: before(a) . after(b) = (l - d) / l for
// 1 <= d = b - a <= l, 0 for d > l and for every backward pair, and
// m extra before-side vectors orthogonal to every after vector. Built by
// alternating projection on the Gram matrix (eigen-clip, row
// renormalisation, target re-imposition).
struct GramStore {
  int n = 0;
  int m = 0;
  int window = 0;
  int dim = 0;
  std::vector<std::vector<float>> before;         // n rows
  std::vector<std::vector<float>> after;          // n rows
  std::vector<std::vector<float>> random_before;  // m rows
  double max_error = 0.0;  // over all constrained entries, float rows

  // Constrained target for before(a) . after(b).
  double Target(int a, int b) const;
};

GramStore BuildGramStore(int n, int m, int window, int iterations = 40);

}  // namespace ccl::oracle

#endif  // CCL_TESTS_ORACLES_GRAM_STORE_H_
