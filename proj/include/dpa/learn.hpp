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

#ifndef DPA_LEARN_HPP
#define DPA_LEARN_HPP

#include <optional>

#include "dpa/bayes_net.hpp"
#include "dpa/information.hpp"

namespace dpa {

// The sufficient statistics for degree-k structure learning: every
// (k+1)-dimensional joint frequency table. Lower-order tables are derived by
// marginalizing the lexicographically first covering table.
class JointTableSet {
 public:
  // Enumerates the size-(k+1) attribute subsets in lexicographic order.
  static std::vector<std::vector<size_t>> subsets(size_t n, size_t size);

  static JointTableSet from_dataset(const Dataset& data, size_t k);
  // Tables supplied externally (merged holder replies). They must cover the
  // lexicographic subset enumeration exactly, in order.
  static JointTableSet from_tables(const AttributeSchema& schema, size_t k,
                                   std::vector<FrequencyTable> tables,
                                   double n);
  // Tables induced by a full joint distribution carrying `weight` total mass
  // (fractional counts are fine).
  static JointTableSet from_joint(const AttributeSchema& schema, size_t k,
                                  const ProbabilityTable& joint,
                                  double weight);

  const AttributeSchema& schema() const { return schema_; }
  size_t k() const { return k_; }
  double n() const { return n_; }
  const std::vector<FrequencyTable>& tables() const { return tables_; }

  // Frequency table over `attrs` (ascending schema indices, size <= k+1),
  // marginalized from the first covering stored table.
  FrequencyTable project(const std::vector<size_t>& attrs) const;

  // Merges another table set over the same schema by cellwise summation.
  void add(const JointTableSet& other);

 private:
  AttributeSchema schema_;
  size_t k_ = 0;
  double n_ = 0;
  std::vector<FrequencyTable> tables_;
  std::vector<uint64_t> masks_;
};

struct GreedyOptions {
  // When set, each round selects with the exponential mechanism at budget
  // epsilon1 / (N - 1); otherwise plain argmax (the non-private baseline).
  std::optional<double> epsilon1;
  // Test hook: keep the budget accounting but suppress the randomness, so
  // the exponential mechanism degenerates to argmax.
  bool inject_noise = true;
};

// Greedy structure learning over precomputed sufficient statistics. The
// first attribute is the schema-first one; each of the following N-1 rounds
// scores every candidate (X not in V, Pa subset of V, |Pa| <= k) by the
// empirical mutual information and adds the selected pair.
BNStructure greedy_structure_from_stats(const JointTableSet& stats, size_t k,
                                        const GreedyOptions& options,
                                        RandomSource& rng);

// Convenience wrapper that counts the statistics from data first.
BNStructure greedy_structure_learn(const Dataset& data, size_t k,
                                   std::optional<double> eps1,
                                   RandomSource& rng);

struct ParameterOptions {
  // When set, each of the N joint estimates is perturbed with
  // Laplace(0, 2N/(n * epsilon2)) per probability cell, clamped and
  // normalized.
  std::optional<double> epsilon2;
  bool inject_noise = true;  // test hook, as above
  // Additive smoothing of the joint counts before conditioning; used by the
  // experiment pipeline to keep every model probability positive.
  bool add_one_smoothing = false;
};

ConditionalTables learn_parameters_central(const Dataset& data,
                                           const BNStructure& structure,
                                           const ParameterOptions& options,
                                           RandomSource& rng);

// Parameter estimation from already-merged statistics; consumes no budget.
ConditionalTables parameters_from_stats(const JointTableSet& stats,
                                        const BNStructure& structure,
                                        bool add_one_smoothing = false);

// Conditional table of `node` given `parents`, from a joint mass vector over
// sorted({node} + parents). Negative cells count as zero; unobserved parent
// realizations fall back to the uniform conditional.
ConditionalTable condition_counts(const AttributeSchema& schema,
                                  const std::string& node,
                                  const std::vector<std::string>& parents,
                                  const FrequencyTable& joint);

struct PrivBayesResult {
  BayesNet net;
  double epsilon1 = 0;
  double epsilon2 = 0;
  double epsilon_total = 0;
};

// Full private run with the default even split epsilon/2 + epsilon/2.
PrivBayesResult run_privbayes(const Dataset& data, size_t k, double epsilon,
                              RandomSource& rng,
                              bool add_one_smoothing = false);

}  // namespace dpa

#endif  // DPA_LEARN_HPP
