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

#include "dpa/schema.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace dpa {
namespace {

std::vector<std::string> split_line(const std::string& line, char delimiter) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, delimiter)) cells.push_back(cell);
  if (!line.empty() && line.back() == delimiter) cells.emplace_back();
  return cells;
}

std::string strip_cr(std::string s) {
  if (!s.empty() && s.back() == '\r') s.pop_back();
  return s;
}

}  // namespace

AttributeSchema::AttributeSchema(std::vector<Attribute> attributes)
    : attributes_(std::move(attributes)) {
  for (size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].domain.empty()) {
      throw SchemaError("attribute '" + attributes_[i].name +
                        "' has an empty domain");
    }
    if (!by_name_.emplace(attributes_[i].name, i).second) {
      throw SchemaError("duplicate attribute name '" + attributes_[i].name +
                        "'");
    }
  }
}

size_t AttributeSchema::index_of(const std::string& name) const {
  auto it = by_name_.find(name);
  if (it == by_name_.end()) {
    throw SchemaError("unknown attribute '" + name + "'");
  }
  return it->second;
}

uint64_t AttributeSchema::joint_domain_size(
    const std::vector<size_t>& attrs) const {
  uint64_t size = 1;
  for (size_t a : attrs) size *= domain_size(a);
  return size;
}

bool AttributeSchema::operator==(const AttributeSchema& other) const {
  if (attributes_.size() != other.attributes_.size()) return false;
  for (size_t i = 0; i < attributes_.size(); ++i) {
    if (attributes_[i].name != other.attributes_[i].name ||
        attributes_[i].domain != other.attributes_[i].domain) {
      return false;
    }
  }
  return true;
}

Dataset read_dataset(const std::string& path, char delimiter,
                     const std::string& schema_sidecar_path) {
  std::ifstream in(path);
  if (!in) throw SchemaError("cannot open dataset file '" + path + "'");

  std::string line;
  if (!std::getline(in, line)) throw SchemaError("dataset file is empty");
  const std::vector<std::string> names = split_line(strip_cr(line), delimiter);
  if (names.empty()) throw SchemaError("dataset header row is empty");

  std::vector<std::vector<std::string>> cells;
  while (std::getline(in, line)) {
    line = strip_cr(line);
    if (line.empty()) continue;
    auto row = split_line(line, delimiter);
    if (row.size() != names.size()) {
      throw SchemaError("row has " + std::to_string(row.size()) +
                        " cells, expected " + std::to_string(names.size()));
    }
    cells.push_back(std::move(row));
  }

  std::vector<Attribute> attributes(names.size());
  for (size_t i = 0; i < names.size(); ++i) attributes[i].name = names[i];

  if (!schema_sidecar_path.empty()) {
    std::ifstream sidecar(schema_sidecar_path);
    if (!sidecar) {
      throw SchemaError("cannot open schema sidecar '" + schema_sidecar_path +
                        "'");
    }
    std::map<std::string, std::vector<std::string>> domains;
    while (std::getline(sidecar, line)) {
      line = strip_cr(line);
      if (line.empty() || line[0] == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) {
        throw SchemaError("bad sidecar line '" + line + "'");
      }
      domains[line.substr(0, eq)] = split_line(line.substr(eq + 1), ',');
    }
    for (auto& attr : attributes) {
      auto it = domains.find(attr.name);
      if (it == domains.end()) {
        throw SchemaError("sidecar is missing attribute '" + attr.name + "'");
      }
      attr.domain = it->second;
    }
  } else {
    for (size_t i = 0; i < attributes.size(); ++i) {
      std::set<std::string> seen;
      for (const auto& row : cells) seen.insert(row[i]);
      attributes[i].domain.assign(seen.begin(), seen.end());
    }
  }

  Dataset data;
  data.schema = AttributeSchema(std::move(attributes));

  std::vector<std::map<std::string, uint32_t>> lookup(names.size());
  for (size_t i = 0; i < names.size(); ++i) {
    const auto& domain = data.schema.attribute(i).domain;
    for (uint32_t v = 0; v < domain.size(); ++v) lookup[i][domain[v]] = v;
  }
  data.rows.reserve(cells.size());
  for (const auto& row : cells) {
    std::vector<uint32_t> coded(row.size());
    for (size_t i = 0; i < row.size(); ++i) {
      auto it = lookup[i].find(row[i]);
      if (it == lookup[i].end()) {
        throw SchemaError("value '" + row[i] + "' is not in the domain of '" +
                          names[i] + "'");
      }
      coded[i] = it->second;
    }
    data.rows.push_back(std::move(coded));
  }
  return data;
}

void write_dataset(const Dataset& data, const std::string& path,
                   char delimiter) {
  std::ofstream out(path);
  if (!out) throw SchemaError("cannot open '" + path + "' for writing");
  for (size_t i = 0; i < data.schema.size(); ++i) {
    if (i) out << delimiter;
    out << data.schema.attribute(i).name;
  }
  out << '\n';
  for (const auto& row : data.rows) {
    for (size_t i = 0; i < row.size(); ++i) {
      if (i) out << delimiter;
      out << data.schema.attribute(i).domain.at(row[i]);
    }
    out << '\n';
  }
}

}  // namespace dpa
