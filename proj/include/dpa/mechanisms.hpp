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

#ifndef DPA_MECHANISMS_HPP
#define DPA_MECHANISMS_HPP

#include <cstddef>
#include <vector>

#include "dpa/random.hpp"

namespace dpa {

// Privacy budget epsilon. Must be positive; +infinity is accepted and means
// "no perturbation" (useful as a zero-noise limit in tests and baselines).
struct PrivacyBudget {
  double epsilon;
  explicit PrivacyBudget(double eps);
};

// l1-sensitivity of a query over adjacent datasets.
struct Sensitivity {
  double delta;
  explicit Sensitivity(double d);
};

// One draw from Laplace(location, scale); scale > 0.
double sample_laplace(double location, double scale, RandomSource& rng);

// Laplace mechanism over a count vector: adds i.i.d. Laplace(0, delta/eps)
// noise per entry. With clamp set, negative results are replaced by 0.
// A zero sensitivity or infinite budget degenerates to the identity.
std::vector<double> perturb_counts(const std::vector<double>& counts,
                                   Sensitivity sensitivity, PrivacyBudget eps,
                                   bool clamp, RandomSource& rng);

// Exponential mechanism: returns index i with probability proportional to
// exp(eps * scores[i] / (2 * delta)). Computed with a max shift so large
// scores cannot overflow. scores nonempty, delta > 0.
size_t exponential_select(const std::vector<double>& scores,
                          Sensitivity score_sensitivity, PrivacyBudget eps,
                          RandomSource& rng);

// Randomized response on a single bit: with probability 1/2 the true bit is
// reported, otherwise a fresh fair coin. Satisfies ln(3)-differential
// privacy.
int randomized_response(int bit, RandomSource& rng);

// Sequential composition: budgets add up.
PrivacyBudget compose_sequential(const std::vector<PrivacyBudget>& budgets);

}  // namespace dpa

#endif  // DPA_MECHANISMS_HPP
