// Copyright 2026 The dpa Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Shared test fixtures and independent oracles. Everything here is test-only
// and must stay independent of the implementation paths it checks.

#ifndef DPA_TESTS_SUPPORT_HPP
#define DPA_TESTS_SUPPORT_HPP

#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "dpa/schema.hpp"

namespace dpa::testing {

// Fixture TINY: three binary attributes, eight rows.
// Rows: (0,0,0) x3, (0,1,1) x2, (1,0,1) x2, (1,1,1) x1.
inline Dataset tiny_dataset() {
  Dataset data;
  data.schema = AttributeSchema({{"A", {"0", "1"}},
                                 {"B", {"0", "1"}},
                                 {"C", {"0", "1"}}});
  data.rows = {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 1, 1},
               {0, 1, 1}, {1, 0, 1}, {1, 0, 1}, {1, 1, 1}};
  return data;
}

struct SampleStats {
  double mean = 0;
  double variance = 0;  // unbiased
  double se_mean = 0;
  size_t count = 0;
};

inline SampleStats summarize(const std::vector<double>& values) {
  SampleStats stats;
  stats.count = values.size();
  const double n = static_cast<double>(values.size());
  stats.mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
  double ss = 0;
  for (double v : values) ss += (v - stats.mean) * (v - stats.mean);
  stats.variance = ss / (n - 1);
  stats.se_mean = std::sqrt(stats.variance / n);
  return stats;
}

// Composite Simpson quadrature on [a, b].
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, int segments = 1 << 16) {
  const double h = (b - a) / segments;
  double total = f(a) + f(b);
  for (int i = 1; i < segments; ++i) {
    total += f(a + i * h) * (i % 2 == 1 ? 4.0 : 2.0);
  }
  return total * h / 3.0;
}

// Brute-force maximum weight spanning tree over a complete graph, by
// enumerating all Pruefer sequences. Returns the edge set as sorted pairs.
inline std::vector<std::pair<size_t, size_t>> max_spanning_tree(
    const std::vector<std::vector<double>>& weights) {
  const size_t n = weights.size();
  std::vector<std::pair<size_t, size_t>> best;
  double best_weight = -1;

  // n^(n-2) labeled trees via Pruefer decoding.
  std::vector<size_t> code(n >= 2 ? n - 2 : 0, 0);
  while (true) {
    std::vector<size_t> degree(n, 1);
    for (size_t c : code) ++degree[c];
    std::vector<std::pair<size_t, size_t>> edges;
    std::vector<size_t> work = code;
    std::vector<bool> used(n, false);
    for (size_t c : work) {
      size_t leaf = 0;
      while (leaf < n && (degree[leaf] != 1 || used[leaf])) ++leaf;
      edges.emplace_back(std::min(leaf, c), std::max(leaf, c));
      used[leaf] = true;
      --degree[c];
    }
    size_t u = 0, v = 0;
    bool found = false;
    for (size_t i = 0; i < n; ++i) {
      if (!used[i] && degree[i] == 1) {
        if (!found) {
          u = i;
          found = true;
        } else {
          v = i;
        }
      }
    }
    edges.emplace_back(std::min(u, v), std::max(u, v));

    double total = 0;
    for (const auto& [a, b] : edges) total += weights[a][b];
    if (total > best_weight) {
      best_weight = total;
      std::sort(edges.begin(), edges.end());
      best = edges;
    }

    size_t pos = 0;
    while (pos < code.size() && code[pos] + 1 == n) {
      code[pos] = 0;
      ++pos;
    }
    if (pos == code.size()) break;
    ++code[pos];
  }
  return best;
}

}  // namespace dpa::testing

#endif  // DPA_TESTS_SUPPORT_HPP
