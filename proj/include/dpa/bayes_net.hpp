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

#ifndef DPA_BAYES_NET_HPP
#define DPA_BAYES_NET_HPP

#include <map>
#include <string>
#include <vector>

#include "dpa/random.hpp"
#include "dpa/schema.hpp"
#include "dpa/tables.hpp"

namespace dpa {

struct StructureError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// DAG over attribute names plus the order in which the greedy learner
// inserted them. Parents of a node always precede it in insertion_order.
struct BNStructure {
  std::vector<std::string> nodes;  // schema order
  std::map<std::string, std::vector<std::string>> parent_sets;
  std::vector<std::string> insertion_order;

  size_t degree() const;
  const std::vector<std::string>& parents(const std::string& node) const;
  bool operator==(const BNStructure& other) const;
};

// Every attribute appears after all of its parents. Among simultaneously
// ready nodes, insertion_order position breaks ties, so an edge-free
// structure comes back in insertion order. Throws on a cycle.
std::vector<std::string> topological_order(const BNStructure& structure);

// Conditional distributions of one attribute, one row per parent
// realization. Rows are indexed lexicographically over the parents (first
// parent most significant); each row sums to 1.
struct ConditionalTable {
  std::vector<std::string> parents;
  std::vector<uint32_t> parent_dims;
  uint32_t value_dim = 0;
  std::vector<double> probs;  // [parent_index * value_dim + value]

  double prob(uint64_t parent_index, uint32_t value) const {
    return probs[parent_index * value_dim + value];
  }
};

struct ConditionalTables {
  std::map<std::string, ConditionalTable> theta;
};

struct BayesNet {
  AttributeSchema schema;
  BNStructure structure;
  ConditionalTables parameters;
};

// Product of the conditional probabilities along the factorization.
double joint_probability(const BayesNet& net, const std::vector<uint32_t>& x);

// Ancestral sampling: attributes drawn in topological order, each from its
// conditional slice.
Dataset prior_sample(const BayesNet& net, size_t count, RandomSource& rng);

// Full joint distribution by enumeration. Intended for desk-scale domains.
ProbabilityTable exact_joint(const BayesNet& net);

// Text serialization (JSON). Stored doubles round-trip exactly.
std::string serialize_model(const BayesNet& net);
BayesNet parse_model(const std::string& text);
void write_model(const BayesNet& net, const std::string& path);
BayesNet read_model(const std::string& path);

}  // namespace dpa

#endif  // DPA_BAYES_NET_HPP
