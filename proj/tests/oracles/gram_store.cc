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

#include "oracles/gram_store.h"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>

namespace ccl::oracle {

double GramStore::Target(int a, int b) const {
  const int d = b - a;
  if (d >= 1 && d <= window) return static_cast<double>(window - d) / window;
  return 0.0;
}

GramStore BuildGramStore(int n, int m, int window, int iterations) {
  GramStore g;
  g.n = n;
  g.m = m;
  g.window = window;
  g.dim = 2 * n + m;
  const int size = g.dim;

  Eigen::MatrixXd target = Eigen::MatrixXd::Identity(size, size);
  Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic> mask =
      Eigen::Matrix<bool, Eigen::Dynamic, Eigen::Dynamic>::Constant(size, size, false);
  auto pin = [&](int r, int c, double v) {
    target(r, c) = target(c, r) = v;
    mask(r, c) = mask(c, r) = true;
  };
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a != b) pin(a, n + b, g.Target(a, b));
    }
  }
  for (int r = 0; r < m; ++r) {
    for (int b = 0; b < n; ++b) pin(2 * n + r, n + b, 0.0);
  }
  // Unpinned starting guess inside the before and after blocks.
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      const double v = std::pow(0.5, std::abs(a - b));
      target(a, b) = v;
      target(n + a, n + b) = v;
    }
  }

  Eigen::MatrixXd x = target;
  Eigen::MatrixXd rows;
  for (int it = 0; it < std::max(iterations, 1); ++it) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(x);
    Eigen::VectorXd w = eig.eigenvalues().cwiseMax(0.0).cwiseSqrt();
    rows = eig.eigenvectors() * w.asDiagonal();
    rows.rowwise().normalize();
    Eigen::MatrixXd gram = rows * rows.transpose();
    x = mask.select(target, gram);
  }

  auto to_float = [&](int r) {
    std::vector<float> v(size);
    double norm = 0.0;
    for (int c = 0; c < size; ++c) norm += rows(r, c) * rows(r, c);
    norm = std::sqrt(norm);
    for (int c = 0; c < size; ++c) v[c] = static_cast<float>(rows(r, c) / norm);
    return v;
  };
  for (int a = 0; a < n; ++a) g.before.push_back(to_float(a));
  for (int b = 0; b < n; ++b) g.after.push_back(to_float(n + b));
  for (int r = 0; r < m; ++r) g.random_before.push_back(to_float(2 * n + r));

  auto dot = [](const std::vector<float> &p, const std::vector<float> &q) {
    double s = 0.0;
    for (size_t k = 0; k < p.size(); ++k) s += static_cast<double>(p[k]) * q[k];
    return s;
  };
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      if (a == b) continue;
      g.max_error = std::max(g.max_error, std::abs(dot(g.before[a], g.after[b]) - g.Target(a, b)));
    }
  }
  for (int r = 0; r < m; ++r) {
    for (int b = 0; b < n; ++b) {
      g.max_error = std::max(g.max_error, std::abs(dot(g.random_before[r], g.after[b])));
    }
  }
  return g;
}

}  // namespace ccl::oracle
