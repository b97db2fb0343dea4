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

#include "dpa/mechanisms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace dpa {

PrivacyBudget::PrivacyBudget(double eps) : epsilon(eps) {
  if (!(eps > 0)) {
    throw std::invalid_argument("PrivacyBudget: epsilon must be positive");
  }
}

Sensitivity::Sensitivity(double d) : delta(d) {
  if (!(d >= 0)) {
    throw std::invalid_argument("Sensitivity: delta must be nonnegative");
  }
}

double sample_laplace(double location, double scale, RandomSource& rng) {
  return rng.next_laplace(location, scale);
}

std::vector<double> perturb_counts(const std::vector<double>& counts,
                                   Sensitivity sensitivity, PrivacyBudget eps,
                                   bool clamp, RandomSource& rng) {
  std::vector<double> out = counts;
  const double scale = sensitivity.delta / eps.epsilon;
  if (scale > 0) {
    for (double& c : out) c += rng.next_laplace(0.0, scale);
  }
  if (clamp) {
    for (double& c : out) c = std::max(c, 0.0);
  }
  return out;
}

size_t exponential_select(const std::vector<double>& scores,
                          Sensitivity score_sensitivity, PrivacyBudget eps,
                          RandomSource& rng) {
  if (scores.empty()) {
    throw std::invalid_argument("exponential_select: scores must be nonempty");
  }
  if (!(score_sensitivity.delta > 0)) {
    throw std::invalid_argument(
        "exponential_select: score sensitivity must be positive");
  }
  const double gain = eps.epsilon / (2.0 * score_sensitivity.delta);
  const double shift = *std::max_element(scores.begin(), scores.end());
  std::vector<double> cumulative(scores.size());
  double total = 0.0;
  for (size_t i = 0; i < scores.size(); ++i) {
    total += std::exp(gain * (scores[i] - shift));
    cumulative[i] = total;
  }
  const double u = rng.next_uniform() * total;
  for (size_t i = 0; i + 1 < cumulative.size(); ++i) {
    if (u < cumulative[i]) return i;
  }
  return cumulative.size() - 1;
}

int randomized_response(int bit, RandomSource& rng) {
  if (bit != 0 && bit != 1) {
    throw std::invalid_argument("randomized_response: input must be a bit");
  }
  if (rng.next_bernoulli(0.5)) return bit;
  return rng.next_bernoulli(0.5) ? 1 : 0;
}

PrivacyBudget compose_sequential(const std::vector<PrivacyBudget>& budgets) {
  if (budgets.empty()) {
    throw std::invalid_argument("compose_sequential: empty budget list");
  }
  double total = 0.0;
  for (const auto& b : budgets) total += b.epsilon;
  return PrivacyBudget(total);
}

}  // namespace dpa
