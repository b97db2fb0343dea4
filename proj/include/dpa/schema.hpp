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

#ifndef DPA_SCHEMA_HPP
#define DPA_SCHEMA_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace dpa {

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Attribute {
  std::string name;
  std::vector<std::string> domain;  // ordered category labels
};

// Ordered list of discrete attributes. Attribute order is significant: joint
// domains are indexed lexicographically with the first attribute most
// significant.
class AttributeSchema {
 public:
  AttributeSchema() = default;
  explicit AttributeSchema(std::vector<Attribute> attributes);

  size_t size() const { return attributes_.size(); }
  const Attribute& attribute(size_t i) const { return attributes_.at(i); }
  const std::vector<Attribute>& attributes() const { return attributes_; }
  size_t index_of(const std::string& name) const;
  uint32_t domain_size(size_t i) const {
    return static_cast<uint32_t>(attributes_.at(i).domain.size());
  }
  uint64_t joint_domain_size(const std::vector<size_t>& attrs) const;

  bool operator==(const AttributeSchema& other) const;

 private:
  std::vector<Attribute> attributes_;
  std::map<std::string, size_t> by_name_;
};

// Rows of category indices under a schema.
struct Dataset {
  AttributeSchema schema;
  std::vector<std::vector<uint32_t>> rows;

  size_t size() const { return rows.size(); }
};

// Reads a delimited text file with a header row of attribute names and
// categorical string cells. Domains are the sorted set of observed values,
// unless a sidecar file with "attribute=comma,separated,labels" lines is
// supplied.
Dataset read_dataset(const std::string& path, char delimiter = ',',
                     const std::string& schema_sidecar_path = "");

void write_dataset(const Dataset& data, const std::string& path,
                   char delimiter = ',');

}  // namespace dpa

#endif  // DPA_SCHEMA_HPP
