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

#include "dpa/stream.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <stdexcept>

#include "dpa/random.hpp"

namespace dpa {

void Stream::validate() const {
  if (has_deletes() && deletes.size() != updates.size()) {
    throw std::invalid_argument("stream: op tags do not match updates");
  }
  std::vector<uint8_t> inserted(universe_size + 1, 0);
  for (size_t t = 0; t < updates.size(); ++t) {
    const uint64_t id = updates[t];
    if (id < 1 || id > universe_size) {
      throw std::invalid_argument("stream: id outside the universe");
    }
    if (has_deletes()) {
      if (deletes[t] && !inserted[id]) {
        throw std::invalid_argument(
            "stream: delete precedes the first insert of id " +
            std::to_string(id));
      }
      if (!deletes[t]) inserted[id] = 1;
    }
  }
}

Stream generate_stream(const StreamSpec& spec) {
  Stream s;
  s.universe_size = spec.universe_size;
  s.updates.reserve(spec.length);
  RandomSource rng(spec.seed);

  if (spec.distribution == StreamDistribution::uniform) {
    for (uint64_t t = 0; t < spec.length; ++t) {
      s.updates.push_back(rng.next_index(spec.universe_size) + 1);
    }
    return s;
  }

  // Zipf over ranks 1..U: precompute the normalized CDF once, then invert
  // uniform draws by binary search.
  std::vector<double> cdf(spec.universe_size);
  double total = 0.0;
  for (uint64_t r = 1; r <= spec.universe_size; ++r) {
    total += 1.0 / std::pow(static_cast<double>(r), spec.zipf_exponent);
    cdf[r - 1] = total;
  }
  for (double& c : cdf) c /= total;
  cdf.back() = 1.0;
  for (uint64_t t = 0; t < spec.length; ++t) {
    const double u = rng.next_uniform();
    const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    s.updates.push_back(
        static_cast<uint64_t>(it - cdf.begin()) + 1);
  }
  return s;
}

std::vector<uint8_t> presence_mask(const Stream& s) {
  std::vector<uint8_t> present(s.universe_size + 1, 0);
  for (size_t t = 0; t < s.updates.size(); ++t) {
    present[s.updates[t]] =
        s.has_deletes() ? static_cast<uint8_t>(!s.deletes[t]) : 1;
  }
  return present;
}

double stream_density(const Stream& s) {
  if (s.universe_size == 0) return 0.0;
  const std::vector<uint8_t> present = presence_mask(s);
  uint64_t distinct = 0;
  for (uint8_t bit : present) distinct += bit;
  return static_cast<double>(distinct) / static_cast<double>(s.universe_size);
}

double sub_stream_density(const Stream& s,
                          const std::vector<uint64_t>& sample) {
  if (sample.empty()) {
    throw std::invalid_argument("sub_stream_density: empty sample");
  }
  const std::vector<uint8_t> present = presence_mask(s);
  uint64_t hits = 0;
  for (uint64_t id : sample) {
    if (id < 1 || id > s.universe_size) {
      throw std::invalid_argument("sub_stream_density: id outside universe");
    }
    hits += present[id];
  }
  return static_cast<double>(hits) / static_cast<double>(sample.size());
}

Stream read_stream(const std::string& path, uint64_t universe_size) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open stream file '" + path + "'");
  Stream s;
  s.universe_size = universe_size;
  std::string line;
  bool tagged = false;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) {
      s.updates.push_back(std::stoull(line));
      s.deletes.push_back(0);
    } else {
      tagged = true;
      s.updates.push_back(std::stoull(line.substr(0, comma)));
      const std::string op = line.substr(comma + 1);
      if (op == "+") {
        s.deletes.push_back(0);
      } else if (op == "-") {
        s.deletes.push_back(1);
      } else {
        throw std::runtime_error("bad stream op '" + op + "'");
      }
    }
  }
  if (!tagged) s.deletes.clear();
  s.validate();
  return s;
}

void write_stream(const Stream& s, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  for (size_t t = 0; t < s.updates.size(); ++t) {
    out << s.updates[t];
    if (s.has_deletes()) out << (s.deletes[t] ? ",-" : ",+");
    out << '\n';
  }
}

}  // namespace dpa
