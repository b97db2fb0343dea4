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

#include "dpa/random.hpp"

#include <cmath>
#include <stdexcept>

namespace dpa {
namespace {

// splitmix64 finalizer; decorrelates (seed, salt) pairs before they reach
// the engine.
uint64_t mix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

RandomSource::RandomSource(uint64_t seed) : RandomSource(seed, 0) {}

RandomSource::RandomSource(uint64_t seed, uint64_t salt)
    : engine_(mix64(mix64(seed) ^ mix64(salt ^ 0xd1b54a32d192ed03ULL))),
      seed_(seed) {}

RandomSource RandomSource::split() {
  ++splits_;
  return RandomSource(seed_ ^ mix64(splits_), splits_);
}

uint64_t RandomSource::next_u64() { return engine_(); }

double RandomSource::next_uniform() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

uint64_t RandomSource::next_index(uint64_t n) {
  if (n == 0) throw std::invalid_argument("next_index: n must be positive");
  // Multiply-shift map of one engine word onto [0, n); the bias of at most
  // n / 2^64 is far below statistical resolution here.
  return static_cast<uint64_t>(
      (static_cast<__uint128_t>(next_u64()) * n) >> 64);
}

bool RandomSource::next_bernoulli(double p) { return next_uniform() < p; }

double RandomSource::next_laplace(double location, double scale) {
  if (!(scale > 0)) {
    throw std::invalid_argument("next_laplace: scale must be positive");
  }
  const double u = next_uniform() - 0.5;
  const double t = 1.0 - 2.0 * std::abs(u);
  // u = -0.5 exactly would take log(0); nudge to the smallest representable
  // magnitude instead.
  const double clipped = t > 0 ? t : 0x1.0p-53;
  return location - scale * (u < 0 ? -1.0 : 1.0) * std::log(clipped);
}

}  // namespace dpa
