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

#ifndef DPA_RANDOM_HPP
#define DPA_RANDOM_HPP

#include <cstdint>
#include <random>

namespace dpa {

// Seeded random source. Every consumer receives a RandomSource explicitly;
// there is no hidden global generator. split() derives an independent child
// stream, so one master seed reproduces an entire experiment regardless of
// how the work is divided.
class RandomSource {
 public:
  explicit RandomSource(uint64_t seed);

  // Derives a child stream. Children of the same parent are distinct; the
  // sequence of children is a deterministic function of the parent's seed.
  RandomSource split();

  uint64_t next_u64();
  // Uniform in [0, 1), 53 bits of precision.
  double next_uniform();
  // Uniform integer in [0, n), n > 0.
  uint64_t next_index(uint64_t n);
  bool next_bernoulli(double p);
  // Inverse-CDF Laplace draw; requires scale > 0.
  double next_laplace(double location, double scale);

  uint64_t seed() const { return seed_; }
  // Underlying engine, for stdlib distributions (binomial etc.).
  std::mt19937_64& engine() { return engine_; }

 private:
  RandomSource(uint64_t seed, uint64_t salt);

  std::mt19937_64 engine_;
  uint64_t seed_ = 0;
  uint64_t splits_ = 0;
};

}  // namespace dpa

#endif  // DPA_RANDOM_HPP
