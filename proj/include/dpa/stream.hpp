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

#ifndef DPA_STREAM_HPP
#define DPA_STREAM_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace dpa {

// Cashier-register stream of unit updates keyed by user id in
// {1..universe_size}. The insert/delete extension tags each update; a user's
// final state is 1 after an insert and 0 after a delete.
struct Stream {
  uint64_t universe_size = 0;
  std::vector<uint64_t> updates;
  std::vector<uint8_t> deletes;  // empty in plain cashier-register mode

  bool has_deletes() const { return !deletes.empty(); }
  // Range check, and in insert/delete mode: no delete before the user's
  // first insert. Throws on violation.
  void validate() const;
};

enum class StreamDistribution { uniform, zipf };

struct StreamSpec {
  StreamDistribution distribution = StreamDistribution::uniform;
  double zipf_exponent = 1.0;
  uint64_t length = 0;
  uint64_t universe_size = 0;
  uint64_t seed = 0;
};

// T i.i.d. draws; zipf uses the given exponent over ranks 1..universe_size
// with a precomputed normalized CDF.
Stream generate_stream(const StreamSpec& spec);

// Final presence per user id; index 0 is unused.
std::vector<uint8_t> presence_mask(const Stream& s);

// Fraction of the universe with positive final state.
double stream_density(const Stream& s);

// Fraction of the sampled ids present in the stream; d(S_M). The sample
// must be nonempty and within the universe.
double sub_stream_density(const Stream& s,
                          const std::vector<uint64_t>& sample);

// One id per line, or "id,+" / "id,-" in insert/delete mode.
Stream read_stream(const std::string& path, uint64_t universe_size);
void write_stream(const Stream& s, const std::string& path);

}  // namespace dpa

#endif  // DPA_STREAM_HPP
