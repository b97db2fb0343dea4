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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <cmath>

#include "doctest.h"
#include "dpa/mechanisms.hpp"
#include "support.hpp"

using namespace dpa;

TEST_CASE("laplace sample variance matches 2b^2") {
  RandomSource rng(42);
  const double b = 1.0;
  std::vector<double> draws(1000000);
  for (double& d : draws) d = sample_laplace(0.0, b, rng);
  const auto stats = testing::summarize(draws);
  CHECK(std::abs(stats.variance - 2.0 * b * b) < 0.02 * 2.0 * b * b);
  // Unbiased location.
  CHECK(std::abs(stats.mean) < 5.0 * stats.se_mean);
}

TEST_CASE("laplace sample median matches location") {
  RandomSource rng(7);
  std::vector<double> draws(100000);
  for (double& d : draws) d = sample_laplace(5.0, 1.0, rng);
  std::nth_element(draws.begin(), draws.begin() + draws.size() / 2,
                   draws.end());
  CHECK(std::abs(draws[draws.size() / 2] - 5.0) < 0.02);
}

TEST_CASE("laplace empirical CDF matches the closed form") {
  // Oracle: for x >= mu, CDF(x) = 1 - exp(-(x-mu)/b)/2. At
  // x = mu - b*ln(2*0.25) = mu + b*ln(2), the CDF is 3/4.
  const double mu = 0.0, b = 1.0;
  const double x = mu - b * std::log(2.0 * 0.25);
  const double analytic = 1.0 - 0.5 * std::exp(-(x - mu) / b);
  CHECK(analytic == doctest::Approx(0.75).epsilon(1e-12));

  RandomSource rng(11);
  size_t below = 0;
  const size_t trials = 200000;
  for (size_t i = 0; i < trials; ++i) {
    if (sample_laplace(mu, b, rng) <= x) ++below;
  }
  const double fraction = static_cast<double>(below) / trials;
  CHECK(std::abs(fraction - analytic) < 0.01 * analytic);
}

TEST_CASE("laplace rejects nonpositive scale") {
  RandomSource rng(1);
  CHECK_THROWS_AS(sample_laplace(0.0, 0.0, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_laplace(0.0, -1.0, rng), std::invalid_argument);
}

TEST_CASE("perturb_counts zero-noise limit returns the counts") {
  RandomSource rng(3);
  const std::vector<double> counts{3, 2, 2, 1};
  const auto out = perturb_counts(
      counts, Sensitivity(2.0),
      PrivacyBudget(std::numeric_limits<double>::infinity()), true, rng);
  CHECK(out == counts);
}

TEST_CASE("perturb_counts clamps negatives") {
  RandomSource rng(4);
  for (int i = 0; i < 200; ++i) {
    const auto out = perturb_counts({0, 0}, Sensitivity(2.0),
                                    PrivacyBudget(0.1), true, rng);
    for (double v : out) CHECK(v >= 0.0);
  }
}

TEST_CASE("perturb_counts empty input") {
  RandomSource rng(5);
  CHECK(perturb_counts({}, Sensitivity(2.0), PrivacyBudget(0.5), false, rng)
            .empty());
}

TEST_CASE("perturb_counts noise variance matches 2(delta/eps)^2") {
  // Monte Carlo against the Laplace variance formula: delta=2, eps=0.5 gives
  // scale 4 and variance 32.
  RandomSource rng(6);
  std::vector<double> noise(100000);
  for (double& v : noise) {
    v = perturb_counts({10.0}, Sensitivity(2.0), PrivacyBudget(0.5), false,
                       rng)[0] -
        10.0;
  }
  const auto stats = testing::summarize(noise);
  CHECK(std::abs(stats.variance - 32.0) < 0.05 * 32.0);
}

TEST_CASE("perturb_counts noise is unbiased") {
  RandomSource rng(8);
  const std::vector<double> counts{3, 2, 2, 1};
  std::vector<std::vector<double>> deltas(counts.size());
  for (int t = 0; t < 100000; ++t) {
    const auto out =
        perturb_counts(counts, Sensitivity(2.0), PrivacyBudget(1.0), false,
                       rng);
    for (size_t i = 0; i < counts.size(); ++i) {
      deltas[i].push_back(out[i] - counts[i]);
    }
  }
  for (const auto& entry : deltas) {
    const auto stats = testing::summarize(entry);
    CHECK(std::abs(stats.mean) < 3.0 * stats.se_mean);
  }
}

TEST_CASE("exponential_select is uniform on equal scores") {
  RandomSource rng(9);
  std::vector<size_t> hits(3, 0);
  const size_t trials = 100000;
  for (size_t i = 0; i < trials; ++i) {
    ++hits[exponential_select({2.5, 2.5, 2.5}, Sensitivity(1.0),
                              PrivacyBudget(1.7), rng)];
  }
  for (size_t h : hits) {
    CHECK(std::abs(static_cast<double>(h) / trials - 1.0 / 3.0) < 0.01);
  }
}

TEST_CASE("exponential_select odds ratio matches the closed form") {
  // scores [1, 0], delta 1, eps 2: Pr(0)/Pr(1) = exp(2*1/2) = e.
  RandomSource rng(10);
  size_t first = 0;
  const size_t trials = 100000;
  for (size_t i = 0; i < trials; ++i) {
    if (exponential_select({1.0, 0.0}, Sensitivity(1.0), PrivacyBudget(2.0),
                           rng) == 0) {
      ++first;
    }
  }
  const double ratio = static_cast<double>(first) / (trials - first);
  CHECK(std::abs(ratio - std::exp(1.0)) < 0.03 * std::exp(1.0));
}

TEST_CASE("exponential_select with tiny epsilon is near uniform") {
  RandomSource rng(12);
  std::vector<size_t> hits(3, 0);
  const size_t trials = 100000;
  for (size_t i = 0; i < trials; ++i) {
    ++hits[exponential_select({5.0, 1.0, 1.0}, Sensitivity(1.0),
                              PrivacyBudget(1e-12), rng)];
  }
  for (size_t h : hits) {
    CHECK(std::abs(static_cast<double>(h) / trials - 1.0 / 3.0) < 0.01);
  }
}

TEST_CASE("exponential_select empirical distribution vs analytic softmax") {
  // Total variation under 0.01 at 1e5 draws for a 5-candidate vector.
  const std::vector<double> scores{0.3, -1.2, 2.0, 0.0, 1.1};
  const double eps = 1.3, delta = 0.7;
  std::vector<double> weights;
  double total = 0;
  for (double s : scores) {
    weights.push_back(std::exp(eps * s / (2 * delta)));
    total += weights.back();
  }
  RandomSource rng(13);
  std::vector<size_t> hits(scores.size(), 0);
  const size_t trials = 100000;
  for (size_t i = 0; i < trials; ++i) {
    ++hits[exponential_select(scores, Sensitivity(delta), PrivacyBudget(eps),
                              rng)];
  }
  double tv = 0;
  for (size_t i = 0; i < scores.size(); ++i) {
    tv += std::abs(static_cast<double>(hits[i]) / trials - weights[i] / total);
  }
  CHECK(tv / 2 < 0.01);
}

TEST_CASE("exponential_select rejects bad input") {
  RandomSource rng(14);
  CHECK_THROWS_AS(
      exponential_select({}, Sensitivity(1.0), PrivacyBudget(1.0), rng),
      std::invalid_argument);
  CHECK_THROWS_AS(exponential_select({1.0}, Sensitivity(0.0),
                                     PrivacyBudget(1.0), rng),
                  std::invalid_argument);
}

TEST_CASE("randomized response output probabilities") {
  // Exhaustive over the two coins: Pr(1|1) = 3/4, Pr(1|0) = 1/4.
  RandomSource rng(15);
  const size_t trials = 400000;
  size_t ones_from_one = 0, ones_from_zero = 0;
  for (size_t i = 0; i < trials; ++i) {
    ones_from_one += randomized_response(1, rng);
    ones_from_zero += randomized_response(0, rng);
  }
  CHECK(std::abs(static_cast<double>(ones_from_one) / trials - 0.75) < 0.005);
  CHECK(std::abs(static_cast<double>(ones_from_zero) / trials - 0.25) < 0.005);
}

TEST_CASE("randomized response satisfies ln(3)-DP exactly") {
  // Enumerable: Pr(o|b) in {1/4, 3/4}, so every likelihood ratio lies in
  // [1/3, 3].
  const double p11 = 0.75, p10 = 0.25;  // Pr(output=1 | bit)
  for (const auto [a, b] : {std::pair{p11, p10}, std::pair{1 - p11, 1 - p10}}) {
    const double ratio = a / b;
    CHECK(ratio <= 3.0 + 1e-15);
    CHECK(ratio >= 1.0 / 3.0 - 1e-15);
  }
  CHECK(p11 / p10 == doctest::Approx(3.0));  // attains the ln(3) budget
}

TEST_CASE("randomized response rejects non-bits") {
  RandomSource rng(16);
  CHECK_THROWS_AS(randomized_response(2, rng), std::invalid_argument);
}

TEST_CASE("sequential composition adds budgets") {
  CHECK(compose_sequential({PrivacyBudget(0.1), PrivacyBudget(0.1)}).epsilon ==
        doctest::Approx(0.2));
  CHECK(compose_sequential({PrivacyBudget(0.5), PrivacyBudget(0.5)}).epsilon ==
        doctest::Approx(1.0));
  CHECK(compose_sequential({PrivacyBudget(0.3)}).epsilon ==
        doctest::Approx(0.3));
  CHECK_THROWS_AS(compose_sequential({}), std::invalid_argument);
}

TEST_CASE("random source determinism") {
  RandomSource a(12345), b(12345);
  for (int i = 0; i < 1000; ++i) {
    CHECK(a.next_u64() == b.next_u64());
  }
  CHECK(a.next_laplace(0, 1) == b.next_laplace(0, 1));
  CHECK(a.next_uniform() == b.next_uniform());
  RandomSource ca = a.split(), cb = b.split();
  CHECK(ca.next_u64() == cb.next_u64());
  // Successive children of one parent are distinct streams.
  RandomSource c1 = a.split(), c2 = a.split();
  CHECK(c1.next_u64() != c2.next_u64());
}

TEST_CASE("privacy budget validation") {
  CHECK_THROWS_AS(PrivacyBudget(0.0), std::invalid_argument);
  CHECK_THROWS_AS(PrivacyBudget(-1.0), std::invalid_argument);
  CHECK_THROWS_AS(Sensitivity(-0.1), std::invalid_argument);
  CHECK(PrivacyBudget(1e-9).epsilon == doctest::Approx(1e-9));
}
