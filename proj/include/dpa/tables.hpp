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

#ifndef DPA_TABLES_HPP
#define DPA_TABLES_HPP

#include <cstdint>
#include <vector>

#include "dpa/schema.hpp"

namespace dpa {

// Joint frequency distribution over a subset of attributes. Cells are indexed
// lexicographically with attrs[0] most significant. attrs are schema indices
// in ascending order. Counts are reals so that perturbed and merged tables
// fit the same type; unperturbed tables hold integers summing to n_source.
struct FrequencyTable {
  std::vector<size_t> attrs;
  std::vector<uint32_t> dims;
  std::vector<double> counts;
  double n_source = 0;

  size_t cells() const { return counts.size(); }
};

// Joint probability distribution over a subset of attributes, same indexing.
// sum_defect records that the entries do not sum to 1, which happens when
// noisy counts are divided by the nominal total.
struct ProbabilityTable {
  std::vector<size_t> attrs;
  std::vector<uint32_t> dims;
  std::vector<double> probs;
  bool sum_defect = false;

  size_t cells() const { return probs.size(); }
};

// Decodes a flat cell index into per-attribute values (most significant
// first) and back.
std::vector<uint32_t> decode_cell(const std::vector<uint32_t>& dims,
                                  uint64_t index);
uint64_t encode_cell(const std::vector<uint32_t>& dims,
                     const std::vector<uint32_t>& values);

FrequencyTable build_frequency_table(const Dataset& data,
                                     std::vector<size_t> attrs);
FrequencyTable build_frequency_table(const Dataset& data,
                                     const std::vector<std::string>& names);

// Sums entries over the dropped attributes; total mass is preserved.
// keep must be a subset of the table's attributes.
FrequencyTable marginalize(const FrequencyTable& table,
                           const std::vector<size_t>& keep);
ProbabilityTable marginalize(const ProbabilityTable& table,
                             const std::vector<size_t>& keep);

enum class NormalizationMode {
  raw,          // counts / divisor, sum defect flagged
  renormalize,  // clamp negatives, then scale to unit mass
};

ProbabilityTable to_probability(const FrequencyTable& table, double divisor,
                                NormalizationMode mode =
                                    NormalizationMode::raw);

// Additive smoothing: (counts[i] + 1) / (n_source + cells). The result is
// entrywise positive.
ProbabilityTable smooth_add_one(const FrequencyTable& table);

}  // namespace dpa

#endif  // DPA_TABLES_HPP
