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

#include "dpa/learn.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dpa {
namespace {

uint64_t mask_of(const std::vector<size_t>& attrs) {
  uint64_t mask = 0;
  for (size_t a : attrs) mask |= uint64_t{1} << a;
  return mask;
}

// Candidate attribute-parent pair with its score.
struct Candidate {
  std::string child;
  std::vector<std::string> parents;  // schema order
  double score = 0;                  // empirical MI in nats
  bool binary_involved = true;
};

// Enumerates Pa subsets of `visited` (schema-ascending indices) with
// |Pa| <= k, in lexicographic subset order: the bitmask order over the
// sorted element list, empty set first.
std::vector<std::vector<size_t>> parent_subsets(
    const std::vector<size_t>& visited, size_t k) {
  std::vector<std::vector<size_t>> out;
  const size_t v = visited.size();
  // Lexicographic order over sorted subsets: generate recursively.
  std::vector<size_t> current;
  struct Rec {
    const std::vector<size_t>& visited;
    size_t k;
    std::vector<std::vector<size_t>>& out;
    void go(std::vector<size_t>& current, size_t next) {
      out.push_back(current);
      if (current.size() == k) return;
      for (size_t i = next; i < visited.size(); ++i) {
        current.push_back(visited[i]);
        go(current, i + 1);
        current.pop_back();
      }
    }
  } rec{visited, std::min(k, v), out};
  rec.go(current, 0);
  return out;
}

}  // namespace

std::vector<std::vector<size_t>> JointTableSet::subsets(size_t n,
                                                        size_t size) {
  std::vector<std::vector<size_t>> out;
  std::vector<size_t> current;
  struct Rec {
    size_t n, size;
    std::vector<std::vector<size_t>>& out;
    void go(std::vector<size_t>& current, size_t next) {
      if (current.size() == size) {
        out.push_back(current);
        return;
      }
      for (size_t i = next; i < n; ++i) {
        current.push_back(i);
        go(current, i + 1);
        current.pop_back();
      }
    }
  } rec{n, size, out};
  rec.go(current, 0);
  return out;
}

JointTableSet JointTableSet::from_dataset(const Dataset& data, size_t k) {
  JointTableSet set;
  set.schema_ = data.schema;
  set.k_ = k;
  set.n_ = static_cast<double>(data.rows.size());
  for (const auto& subset : subsets(data.schema.size(), k + 1)) {
    set.tables_.push_back(build_frequency_table(data, subset));
    set.masks_.push_back(mask_of(subset));
  }
  return set;
}

JointTableSet JointTableSet::from_tables(const AttributeSchema& schema,
                                         size_t k,
                                         std::vector<FrequencyTable> tables,
                                         double n) {
  const auto expected = subsets(schema.size(), k + 1);
  if (tables.size() != expected.size()) {
    throw std::invalid_argument("from_tables: wrong number of tables");
  }
  JointTableSet set;
  set.schema_ = schema;
  set.k_ = k;
  set.n_ = n;
  for (size_t i = 0; i < tables.size(); ++i) {
    if (tables[i].attrs != expected[i]) {
      throw std::invalid_argument("from_tables: unexpected subset order");
    }
    set.masks_.push_back(mask_of(tables[i].attrs));
    set.tables_.push_back(std::move(tables[i]));
  }
  return set;
}

JointTableSet JointTableSet::from_joint(const AttributeSchema& schema,
                                        size_t k,
                                        const ProbabilityTable& joint,
                                        double weight) {
  FrequencyTable full;
  full.attrs = joint.attrs;
  full.dims = joint.dims;
  full.n_source = weight;
  full.counts.resize(joint.probs.size());
  for (size_t i = 0; i < joint.probs.size(); ++i) {
    full.counts[i] = joint.probs[i] * weight;
  }
  JointTableSet set;
  set.schema_ = schema;
  set.k_ = k;
  set.n_ = weight;
  for (const auto& subset : subsets(schema.size(), k + 1)) {
    set.tables_.push_back(marginalize(full, subset));
    set.masks_.push_back(mask_of(subset));
  }
  return set;
}

FrequencyTable JointTableSet::project(const std::vector<size_t>& attrs) const {
  const uint64_t want = mask_of(attrs);
  for (size_t i = 0; i < tables_.size(); ++i) {
    if ((masks_[i] & want) == want) {
      if (masks_[i] == want) return tables_[i];
      return marginalize(tables_[i], attrs);
    }
  }
  throw std::invalid_argument("project: no stored table covers the subset");
}

void JointTableSet::add(const JointTableSet& other) {
  if (!(schema_ == other.schema_) || k_ != other.k_ ||
      tables_.size() != other.tables_.size()) {
    throw std::invalid_argument("add: incompatible table sets");
  }
  for (size_t i = 0; i < tables_.size(); ++i) {
    for (size_t c = 0; c < tables_[i].counts.size(); ++c) {
      tables_[i].counts[c] += other.tables_[i].counts[c];
    }
    tables_[i].n_source += other.tables_[i].n_source;
  }
  n_ += other.n_;
}

BNStructure greedy_structure_from_stats(const JointTableSet& stats, size_t k,
                                        const GreedyOptions& options,
                                        RandomSource& rng) {
  const AttributeSchema& schema = stats.schema();
  const size_t n_attrs = schema.size();
  if (n_attrs == 0) throw StructureError("empty schema");
  if (k < 1 || k >= n_attrs) {
    throw std::invalid_argument("greedy structure learning requires 1 <= k < N");
  }
  if (!(stats.n() > 0)) throw std::invalid_argument("empty dataset");

  BNStructure structure;
  for (size_t i = 0; i < n_attrs; ++i) {
    structure.nodes.push_back(schema.attribute(i).name);
  }

  // The paper leaves the first pick arbitrary; the schema-first attribute is
  // chosen so runs are reproducible.
  std::vector<size_t> visited{0};
  structure.parent_sets[schema.attribute(0).name] = {};
  structure.insertion_order.push_back(schema.attribute(0).name);

  const uint64_t n_int = static_cast<uint64_t>(std::llround(stats.n()));

  for (size_t round = 1; round < n_attrs; ++round) {
    std::vector<Candidate> candidates;
    for (size_t x = 0; x < n_attrs; ++x) {
      if (std::find(visited.begin(), visited.end(), x) != visited.end()) {
        continue;
      }
      for (const auto& pa : parent_subsets(visited, k)) {
        Candidate cand;
        cand.child = schema.attribute(x).name;
        for (size_t p : pa) cand.parents.push_back(schema.attribute(p).name);
        if (pa.empty()) {
          cand.score = 0.0;
          cand.binary_involved = true;  // constant score, any bound applies
        } else {
          std::vector<size_t> joint_attrs = pa;
          joint_attrs.push_back(x);
          std::sort(joint_attrs.begin(), joint_attrs.end());
          const ProbabilityTable joint =
              to_probability(stats.project(joint_attrs), stats.n());
          cand.score = mutual_information(joint, {x}, pa, LogBase::nats);
          cand.binary_involved = schema.domain_size(x) == 2 ||
                                 schema.joint_domain_size(pa) == 2;
        }
        candidates.push_back(std::move(cand));
      }
    }

    size_t pick = 0;
    const bool use_mechanism =
        options.epsilon1.has_value() && options.inject_noise;
    if (use_mechanism) {
      bool all_binary = true;
      for (const auto& c : candidates) all_binary &= c.binary_involved;
      const Sensitivity delta = mi_sensitivity(n_int, all_binary);
      std::vector<double> scores;
      scores.reserve(candidates.size());
      for (const auto& c : candidates) scores.push_back(c.score);
      const double round_budget =
          *options.epsilon1 / static_cast<double>(n_attrs - 1);
      pick = exponential_select(scores, delta, PrivacyBudget(round_budget),
                                rng);
    } else {
      for (size_t i = 1; i < candidates.size(); ++i) {
        if (candidates[i].score > candidates[pick].score) pick = i;
      }
    }

    const Candidate& chosen = candidates[pick];
    structure.parent_sets[chosen.child] = chosen.parents;
    structure.insertion_order.push_back(chosen.child);
    visited.push_back(schema.index_of(chosen.child));
    std::sort(visited.begin(), visited.end());
  }
  return structure;
}

BNStructure greedy_structure_learn(const Dataset& data, size_t k,
                                   std::optional<double> eps1,
                                   RandomSource& rng) {
  GreedyOptions options;
  options.epsilon1 = eps1;
  return greedy_structure_from_stats(JointTableSet::from_dataset(data, k), k,
                                     options, rng);
}

ConditionalTable condition_counts(const AttributeSchema& schema,
                                  const std::string& node,
                                  const std::vector<std::string>& parents,
                                  const FrequencyTable& joint) {
  ConditionalTable table;
  table.parents = parents;
  for (const auto& p : parents) {
    table.parent_dims.push_back(schema.domain_size(schema.index_of(p)));
  }
  const size_t node_attr = schema.index_of(node);
  table.value_dim = schema.domain_size(node_attr);

  uint64_t parent_cells = 1;
  for (uint32_t d : table.parent_dims) parent_cells *= d;
  table.probs.assign(parent_cells * table.value_dim, 0.0);

  // Positions of parents (in table.parents order) and of the node within the
  // sorted joint attribute list.
  std::vector<size_t> parent_pos;
  for (const auto& p : parents) {
    const size_t attr = schema.index_of(p);
    auto it = std::find(joint.attrs.begin(), joint.attrs.end(), attr);
    parent_pos.push_back(static_cast<size_t>(it - joint.attrs.begin()));
  }
  const size_t node_pos = static_cast<size_t>(
      std::find(joint.attrs.begin(), joint.attrs.end(), node_attr) -
      joint.attrs.begin());

  for (uint64_t c = 0; c < joint.counts.size(); ++c) {
    const std::vector<uint32_t> cell = decode_cell(joint.dims, c);
    uint64_t pa = 0;
    for (size_t i = 0; i < parent_pos.size(); ++i) {
      pa = pa * table.parent_dims[i] + cell[parent_pos[i]];
    }
    table.probs[pa * table.value_dim + cell[node_pos]] +=
        std::max(joint.counts[c], 0.0);
  }

  for (uint64_t row = 0; row < parent_cells; ++row) {
    double total = 0.0;
    for (uint32_t v = 0; v < table.value_dim; ++v) {
      total += table.probs[row * table.value_dim + v];
    }
    if (total > 0) {
      for (uint32_t v = 0; v < table.value_dim; ++v) {
        table.probs[row * table.value_dim + v] /= total;
      }
    } else {
      // Parent realization never observed: fall back to the uniform
      // conditional.
      const double uniform = 1.0 / table.value_dim;
      for (uint32_t v = 0; v < table.value_dim; ++v) {
        table.probs[row * table.value_dim + v] = uniform;
      }
    }
  }
  return table;
}

namespace {

ConditionalTables parameters_impl(
    const AttributeSchema& schema, const BNStructure& structure,
    const std::function<FrequencyTable(const std::vector<size_t>&)>& fetch,
    const ParameterOptions& options, RandomSource& rng) {
  const size_t n_attrs = schema.size();
  ConditionalTables theta;
  for (const auto& node : structure.nodes) {
    const auto& parents = structure.parents(node);
    std::vector<size_t> attrs{schema.index_of(node)};
    for (const auto& p : parents) attrs.push_back(schema.index_of(p));
    std::sort(attrs.begin(), attrs.end());

    FrequencyTable joint = fetch(attrs);
    if (options.epsilon2.has_value() && options.inject_noise) {
      // Laplace(0, 2N/(n*eps2)) on the probability estimate is equivalent to
      // this scale on the count scale used here.
      const double scale =
          2.0 * static_cast<double>(n_attrs) / *options.epsilon2;
      for (double& c : joint.counts) c += rng.next_laplace(0.0, scale);
    }
    for (double& c : joint.counts) c = std::max(c, 0.0);
    if (options.add_one_smoothing) {
      for (double& c : joint.counts) c += 1.0;
    }
    // Negatives are clamped above; the joint need not be normalized before
    // conditioning, since each conditional slice is normalized on its own.
    theta.theta[node] = condition_counts(schema, node, parents, joint);
  }
  return theta;
}

}  // namespace

ConditionalTables learn_parameters_central(const Dataset& data,
                                           const BNStructure& structure,
                                           const ParameterOptions& options,
                                           RandomSource& rng) {
  if (data.rows.empty()) {
    throw std::invalid_argument("learn_parameters_central: empty dataset");
  }
  return parameters_impl(
      data.schema, structure,
      [&](const std::vector<size_t>& attrs) {
        return build_frequency_table(data, attrs);
      },
      options, rng);
}

ConditionalTables parameters_from_stats(const JointTableSet& stats,
                                        const BNStructure& structure,
                                        bool add_one_smoothing) {
  ParameterOptions options;
  options.add_one_smoothing = add_one_smoothing;
  RandomSource unused(0);
  return parameters_impl(
      stats.schema(), structure,
      [&](const std::vector<size_t>& attrs) { return stats.project(attrs); },
      options, unused);
}

PrivBayesResult run_privbayes(const Dataset& data, size_t k, double epsilon,
                              RandomSource& rng, bool add_one_smoothing) {
  PrivBayesResult result;
  result.epsilon1 = epsilon / 2.0;
  result.epsilon2 = epsilon / 2.0;
  result.epsilon_total =
      compose_sequential({PrivacyBudget(result.epsilon1),
                          PrivacyBudget(result.epsilon2)})
          .epsilon;

  result.net.schema = data.schema;
  result.net.structure = greedy_structure_learn(data, k, result.epsilon1, rng);
  ParameterOptions options;
  options.epsilon2 = result.epsilon2;
  options.add_one_smoothing = add_one_smoothing;
  result.net.parameters =
      learn_parameters_central(data, result.net.structure, options, rng);
  return result;
}

}  // namespace dpa
