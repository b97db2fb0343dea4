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

#include "dpa/information.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dpa {
namespace {

constexpr double kLog2e = 1.4426950408889634074;  // log2(e)

double base_factor(LogBase base) {
  return base == LogBase::bits ? kLog2e : 1.0;
}

void require_partition(const ProbabilityTable& joint,
                       const std::vector<size_t>& x,
                       const std::vector<size_t>& y) {
  std::vector<size_t> merged = x;
  merged.insert(merged.end(), y.begin(), y.end());
  std::sort(merged.begin(), merged.end());
  for (size_t i = 1; i < merged.size(); ++i) {
    if (merged[i] == merged[i - 1]) {
      throw SchemaError("mutual_information: subsets overlap");
    }
  }
  if (merged != joint.attrs) {
    throw SchemaError(
        "mutual_information: subsets must partition the joint attributes");
  }
}

}  // namespace

double entropy(const ProbabilityTable& p, LogBase base) {
  double h = 0.0;
  for (double v : p.probs) {
    if (v > 0) h -= v * std::log(v);
  }
  return h * base_factor(base);
}

double mutual_information(const ProbabilityTable& joint,
                          const std::vector<size_t>& x,
                          const std::vector<size_t>& y, LogBase base) {
  require_partition(joint, x, y);
  const double hx = entropy(marginalize(joint, x), base);
  const double hy = entropy(marginalize(joint, y), base);
  const double hxy = entropy(joint, base);
  return std::max(hx + hy - hxy, 0.0);
}

double mutual_information_direct(const ProbabilityTable& joint,
                                 const std::vector<size_t>& x,
                                 const std::vector<size_t>& y, LogBase base) {
  require_partition(joint, x, y);
  const ProbabilityTable px = marginalize(joint, x);
  const ProbabilityTable py = marginalize(joint, y);

  std::vector<size_t> xpos, ypos;
  for (size_t a : x) {
    auto it = std::find(joint.attrs.begin(), joint.attrs.end(), a);
    xpos.push_back(static_cast<size_t>(it - joint.attrs.begin()));
  }
  for (size_t a : y) {
    auto it = std::find(joint.attrs.begin(), joint.attrs.end(), a);
    ypos.push_back(static_cast<size_t>(it - joint.attrs.begin()));
  }

  double total = 0.0;
  for (uint64_t i = 0; i < joint.probs.size(); ++i) {
    const double pxy = joint.probs[i];
    if (pxy <= 0) continue;
    const std::vector<uint32_t> cell = decode_cell(joint.dims, i);
    uint64_t xi = 0, yi = 0;
    for (size_t p : xpos) xi = xi * joint.dims[p] + cell[p];
    for (size_t p : ypos) yi = yi * joint.dims[p] + cell[p];
    if (px.probs[xi] <= 0 || py.probs[yi] <= 0) continue;
    total += pxy * std::log(pxy / (px.probs[xi] * py.probs[yi]));
  }
  return total * base_factor(base);
}

double kl_divergence(const ProbabilityTable& p, const ProbabilityTable& q) {
  if (p.attrs != q.attrs || p.probs.size() != q.probs.size()) {
    throw SchemaError("kl_divergence: tables are over different domains");
  }
  double total = 0.0;
  for (size_t i = 0; i < p.probs.size(); ++i) {
    if (p.probs[i] <= 0) continue;
    if (q.probs[i] <= 0) return std::numeric_limits<double>::infinity();
    total += p.probs[i] * std::log(p.probs[i] / q.probs[i]);
  }
  return total * kLog2e;
}

double cross_entropy(const ProbabilityTable& p, const ProbabilityTable& q) {
  if (p.attrs != q.attrs || p.probs.size() != q.probs.size()) {
    throw SchemaError("cross_entropy: tables are over different domains");
  }
  double total = 0.0;
  for (size_t i = 0; i < p.probs.size(); ++i) {
    if (p.probs[i] <= 0) continue;
    if (q.probs[i] <= 0) return std::numeric_limits<double>::infinity();
    total -= p.probs[i] * std::log(q.probs[i]);
  }
  return total * kLog2e;
}

double empirical_cross_entropy(
    const Dataset& test,
    const std::function<double(const std::vector<uint32_t>&)>& model_eval) {
  if (test.rows.empty()) {
    throw std::invalid_argument("empirical_cross_entropy: empty test set");
  }
  double total = 0.0;
  for (const auto& row : test.rows) {
    const double q = model_eval(row);
    if (q <= 0) return std::numeric_limits<double>::infinity();
    total -= std::log2(q);
  }
  return total / static_cast<double>(test.rows.size());
}

Sensitivity mi_sensitivity(uint64_t n, bool binary_involved) {
  if (n < 2) throw std::invalid_argument("mi_sensitivity: n must be >= 2");
  const double nd = static_cast<double>(n);
  if (binary_involved) {
    return Sensitivity(std::log(nd) / nd +
                       (nd - 1.0) / nd * std::log(nd / (nd - 1.0)));
  }
  return Sensitivity(2.0 / nd * std::log((nd + 1.0) / 2.0) +
                     (nd - 1.0) / nd * std::log((nd + 1.0) / (nd - 1.0)));
}

}  // namespace dpa
