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

#include "dpa/bayes_net.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace dpa {
namespace {

using nlohmann::json;

// Index of a parent realization given a full row.
uint64_t parent_index_for_row(const ConditionalTable& table,
                              const AttributeSchema& schema,
                              const std::vector<uint32_t>& row) {
  uint64_t index = 0;
  for (size_t i = 0; i < table.parents.size(); ++i) {
    index = index * table.parent_dims[i] + row[schema.index_of(table.parents[i])];
  }
  return index;
}

}  // namespace

size_t BNStructure::degree() const {
  size_t k = 0;
  for (const auto& [node, parents] : parent_sets) {
    k = std::max(k, parents.size());
  }
  return k;
}

const std::vector<std::string>& BNStructure::parents(
    const std::string& node) const {
  auto it = parent_sets.find(node);
  if (it == parent_sets.end()) {
    throw StructureError("node '" + node + "' is not in the structure");
  }
  return it->second;
}

bool BNStructure::operator==(const BNStructure& other) const {
  return nodes == other.nodes && parent_sets == other.parent_sets &&
         insertion_order == other.insertion_order;
}

std::vector<std::string> topological_order(const BNStructure& structure) {
  std::map<std::string, size_t> rank;
  for (size_t i = 0; i < structure.insertion_order.size(); ++i) {
    rank[structure.insertion_order[i]] = i;
  }
  // Nodes missing from insertion_order sort after the listed ones.
  for (const auto& node : structure.nodes) {
    rank.emplace(node, rank.size() + structure.nodes.size());
  }

  std::map<std::string, size_t> remaining;
  for (const auto& node : structure.nodes) {
    remaining[node] = structure.parents(node).size();
  }

  std::vector<std::string> order;
  order.reserve(structure.nodes.size());
  std::vector<std::string> done;
  while (order.size() < structure.nodes.size()) {
    std::string best;
    size_t best_rank = SIZE_MAX;
    for (const auto& [node, missing] : remaining) {
      if (missing == 0 && rank[node] < best_rank) {
        best = node;
        best_rank = rank[node];
      }
    }
    if (best.empty()) {
      throw StructureError("structure contains a cycle");
    }
    order.push_back(best);
    remaining.erase(best);
    for (auto& [node, missing] : remaining) {
      const auto& parents = structure.parents(node);
      if (std::find(parents.begin(), parents.end(), best) != parents.end()) {
        --missing;
      }
    }
  }
  return order;
}

double joint_probability(const BayesNet& net, const std::vector<uint32_t>& x) {
  if (x.size() != net.schema.size()) {
    throw SchemaError("joint_probability: tuple does not match the schema");
  }
  double p = 1.0;
  for (const auto& node : net.structure.nodes) {
    const auto& table = net.parameters.theta.at(node);
    const uint64_t pa = parent_index_for_row(table, net.schema, x);
    p *= table.prob(pa, x[net.schema.index_of(node)]);
  }
  return p;
}

Dataset prior_sample(const BayesNet& net, size_t count, RandomSource& rng) {
  const std::vector<std::string> order = topological_order(net.structure);
  std::vector<size_t> attr_index(order.size());
  for (size_t i = 0; i < order.size(); ++i) {
    attr_index[i] = net.schema.index_of(order[i]);
  }

  Dataset data;
  data.schema = net.schema;
  data.rows.assign(count, std::vector<uint32_t>(net.schema.size(), 0));
  for (auto& row : data.rows) {
    for (size_t i = 0; i < order.size(); ++i) {
      const auto& table = net.parameters.theta.at(order[i]);
      const uint64_t pa = parent_index_for_row(table, net.schema, row);
      const double u = rng.next_uniform();
      double acc = 0.0;
      uint32_t value = table.value_dim - 1;
      for (uint32_t v = 0; v < table.value_dim; ++v) {
        acc += table.prob(pa, v);
        if (u < acc) {
          value = v;
          break;
        }
      }
      row[attr_index[i]] = value;
    }
  }
  return data;
}

ProbabilityTable exact_joint(const BayesNet& net) {
  ProbabilityTable joint;
  joint.attrs.resize(net.schema.size());
  for (size_t i = 0; i < net.schema.size(); ++i) {
    joint.attrs[i] = i;
    joint.dims.push_back(net.schema.domain_size(i));
  }
  const uint64_t cells = net.schema.joint_domain_size(joint.attrs);
  joint.probs.resize(cells);
  for (uint64_t c = 0; c < cells; ++c) {
    joint.probs[c] = joint_probability(net, decode_cell(joint.dims, c));
  }
  return joint;
}

std::string serialize_model(const BayesNet& net) {
  json doc;
  json schema = json::array();
  for (const auto& attr : net.schema.attributes()) {
    schema.push_back({{"name", attr.name}, {"domain", attr.domain}});
  }
  doc["schema"] = schema;
  doc["insertion_order"] = net.structure.insertion_order;
  json parents;
  for (const auto& node : net.structure.nodes) {
    parents[node] = net.structure.parents(node);
  }
  doc["parents"] = parents;
  json cpt;
  for (const auto& node : net.structure.nodes) {
    cpt[node] = net.parameters.theta.at(node).probs;
  }
  doc["cpt"] = cpt;
  return doc.dump();
}

BayesNet parse_model(const std::string& text) {
  const json doc = json::parse(text);
  std::vector<Attribute> attributes;
  for (const auto& item : doc.at("schema")) {
    Attribute attr;
    attr.name = item.at("name").get<std::string>();
    attr.domain = item.at("domain").get<std::vector<std::string>>();
    attributes.push_back(std::move(attr));
  }
  BayesNet net;
  net.schema = AttributeSchema(std::move(attributes));
  for (const auto& attr : net.schema.attributes()) {
    net.structure.nodes.push_back(attr.name);
  }
  net.structure.insertion_order =
      doc.at("insertion_order").get<std::vector<std::string>>();
  for (const auto& node : net.structure.nodes) {
    net.structure.parent_sets[node] =
        doc.at("parents").at(node).get<std::vector<std::string>>();
  }
  for (const auto& node : net.structure.nodes) {
    ConditionalTable table;
    table.parents = net.structure.parent_sets[node];
    for (const auto& parent : table.parents) {
      table.parent_dims.push_back(
          net.schema.domain_size(net.schema.index_of(parent)));
    }
    table.value_dim = net.schema.domain_size(net.schema.index_of(node));
    table.probs = doc.at("cpt").at(node).get<std::vector<double>>();
    uint64_t rows = 1;
    for (uint32_t d : table.parent_dims) rows *= d;
    if (table.probs.size() != rows * table.value_dim) {
      throw StructureError("cpt for '" + node + "' has the wrong shape");
    }
    net.parameters.theta[node] = std::move(table);
  }
  return net;
}

void write_model(const BayesNet& net, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << serialize_model(net) << '\n';
}

BayesNet read_model(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open model file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_model(ss.str());
}

}  // namespace dpa
