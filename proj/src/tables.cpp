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

#include "dpa/tables.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dpa {
namespace {

void require_sorted_subset(const std::vector<size_t>& attrs, size_t n) {
  for (size_t i = 0; i < attrs.size(); ++i) {
    if (attrs[i] >= n) throw SchemaError("attribute index out of range");
    if (i > 0 && attrs[i] <= attrs[i - 1]) {
      throw SchemaError("attribute subset must be strictly ascending");
    }
  }
}

// Positions of `keep` inside `attrs`; throws if keep is not a subset.
std::vector<size_t> subset_positions(const std::vector<size_t>& attrs,
                                     const std::vector<size_t>& keep) {
  std::vector<size_t> pos;
  pos.reserve(keep.size());
  for (size_t k : keep) {
    auto it = std::find(attrs.begin(), attrs.end(), k);
    if (it == attrs.end()) {
      throw SchemaError("kept attribute is not part of the table");
    }
    pos.push_back(static_cast<size_t>(it - attrs.begin()));
  }
  return pos;
}

template <typename Table>
Table marginalize_impl(const Table& table, const std::vector<size_t>& keep,
                       const std::vector<double>& values,
                       std::vector<double>* out_values) {
  require_sorted_subset(keep, SIZE_MAX);
  const std::vector<size_t> pos = subset_positions(table.attrs, keep);

  Table out;
  out.attrs = keep;
  out.dims.reserve(keep.size());
  for (size_t p : pos) out.dims.push_back(table.dims[p]);

  uint64_t out_cells = 1;
  for (uint32_t d : out.dims) out_cells *= d;
  out_values->assign(out_cells, 0.0);

  std::vector<uint32_t> cell(table.dims.size());
  for (uint64_t i = 0; i < values.size(); ++i) {
    uint64_t rest = i;
    for (size_t a = table.dims.size(); a-- > 0;) {
      cell[a] = static_cast<uint32_t>(rest % table.dims[a]);
      rest /= table.dims[a];
    }
    uint64_t j = 0;
    for (size_t p : pos) j = j * table.dims[p] + cell[p];
    (*out_values)[j] += values[i];
  }
  return out;
}

}  // namespace

std::vector<uint32_t> decode_cell(const std::vector<uint32_t>& dims,
                                  uint64_t index) {
  std::vector<uint32_t> values(dims.size());
  for (size_t a = dims.size(); a-- > 0;) {
    values[a] = static_cast<uint32_t>(index % dims[a]);
    index /= dims[a];
  }
  return values;
}

uint64_t encode_cell(const std::vector<uint32_t>& dims,
                     const std::vector<uint32_t>& values) {
  uint64_t index = 0;
  for (size_t a = 0; a < dims.size(); ++a) {
    index = index * dims[a] + values[a];
  }
  return index;
}

FrequencyTable build_frequency_table(const Dataset& data,
                                     std::vector<size_t> attrs) {
  require_sorted_subset(attrs, data.schema.size());
  FrequencyTable table;
  table.attrs = std::move(attrs);
  table.dims.reserve(table.attrs.size());
  for (size_t a : table.attrs) table.dims.push_back(data.schema.domain_size(a));
  table.counts.assign(data.schema.joint_domain_size(table.attrs), 0.0);
  table.n_source = static_cast<double>(data.rows.size());
  for (const auto& row : data.rows) {
    uint64_t index = 0;
    for (size_t i = 0; i < table.attrs.size(); ++i) {
      index = index * table.dims[i] + row[table.attrs[i]];
    }
    table.counts[index] += 1.0;
  }
  return table;
}

FrequencyTable build_frequency_table(const Dataset& data,
                                     const std::vector<std::string>& names) {
  std::vector<size_t> attrs;
  attrs.reserve(names.size());
  for (const auto& name : names) attrs.push_back(data.schema.index_of(name));
  std::sort(attrs.begin(), attrs.end());
  return build_frequency_table(data, std::move(attrs));
}

FrequencyTable marginalize(const FrequencyTable& table,
                           const std::vector<size_t>& keep) {
  std::vector<double> values;
  FrequencyTable out = marginalize_impl(table, keep, table.counts, &values);
  out.counts = std::move(values);
  out.n_source = table.n_source;
  return out;
}

ProbabilityTable marginalize(const ProbabilityTable& table,
                             const std::vector<size_t>& keep) {
  std::vector<double> values;
  ProbabilityTable out = marginalize_impl(table, keep, table.probs, &values);
  out.probs = std::move(values);
  out.sum_defect = table.sum_defect;
  return out;
}

ProbabilityTable to_probability(const FrequencyTable& table, double divisor,
                                NormalizationMode mode) {
  if (!(divisor > 0)) {
    throw std::invalid_argument("to_probability: divisor must be positive");
  }
  ProbabilityTable out;
  out.attrs = table.attrs;
  out.dims = table.dims;
  out.probs.resize(table.counts.size());
  for (size_t i = 0; i < table.counts.size(); ++i) {
    out.probs[i] = table.counts[i] / divisor;
  }
  if (mode == NormalizationMode::renormalize) {
    double total = 0.0;
    for (double& p : out.probs) {
      p = std::max(p, 0.0);
      total += p;
    }
    if (total > 0) {
      for (double& p : out.probs) p /= total;
    } else {
      const double uniform = 1.0 / static_cast<double>(out.probs.size());
      for (double& p : out.probs) p = uniform;
    }
    out.sum_defect = false;
  } else {
    double total = 0.0;
    for (double p : out.probs) total += p;
    out.sum_defect = std::abs(total - 1.0) > 1e-9;
  }
  return out;
}

ProbabilityTable smooth_add_one(const FrequencyTable& table) {
  ProbabilityTable out;
  out.attrs = table.attrs;
  out.dims = table.dims;
  out.probs.resize(table.counts.size());
  const double divisor =
      table.n_source + static_cast<double>(table.counts.size());
  for (size_t i = 0; i < table.counts.size(); ++i) {
    out.probs[i] = (table.counts[i] + 1.0) / divisor;
  }
  return out;
}

}  // namespace dpa
