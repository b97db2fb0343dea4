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

#include "dpa/entropy_analysis.hpp"

#include <cmath>
#include <stdexcept>

namespace dpa {

double multinomial_moment(double n, double p, int order) {
  const double p2 = p * p, p3 = p2 * p, p4 = p3 * p, p5 = p4 * p, p6 = p5 * p;
  const double n2 = n * n, n3 = n2 * n, n4 = n3 * n, n5 = n4 * n, n6 = n5 * n;
  switch (order) {
    case 1:
      return n * p;
    case 2:
      return n2 * p2 + n * (-p2 + p);
    case 3:
      return n3 * p3 + n2 * (-3 * p3 + 3 * p2) + n * (2 * p3 - 3 * p2 + p);
    case 4:
      return n4 * p4 + n3 * (-6 * p4 + 6 * p3) +
             n2 * (11 * p4 - 18 * p3 + 7 * p2) +
             n * (-6 * p4 + 12 * p3 - 7 * p2 + p);
    case 5:
      return n5 * p5 + n4 * (-10 * p5 + 10 * p4) +
             n3 * (35 * p5 - 60 * p4 + 25 * p3) +
             n2 * (-50 * p5 + 110 * p4 - 75 * p3 + 15 * p2) +
             n * (24 * p5 - 60 * p4 + 50 * p3 - 15 * p2 + p);
    case 6:
      return n6 * p6 + n5 * (-15 * p6 + 15 * p5) +
             n4 * (85 * p6 - 150 * p5 + 65 * p4) +
             n3 * (-225 * p6 + 525 * p5 - 390 * p4 + 90 * p3) +
             n2 * (274 * p6 - 750 * p5 + 715 * p4 - 270 * p3 + 31 * p2) +
             n * (-120 * p6 + 360 * p5 - 390 * p4 + 180 * p3 - 31 * p2 + p);
    default:
      throw std::invalid_argument("multinomial_moment: order must be 1..6");
  }
}

double laplace_sum_moment(int m_terms, double b, int order) {
  if (order < 1 || order > 6) {
    throw std::invalid_argument("laplace_sum_moment: order must be 1..6");
  }
  if (order % 2 == 1) return 0.0;
  const double m = static_cast<double>(m_terms);
  const double b2 = b * b;
  switch (order) {
    case 2:
      return 2.0 * m * b2;
    case 4:
      return 12.0 * (m * m + m) * b2 * b2;
    default:
      // Even-partition expansion of E[(sum eta_i)^6]: the (6), (4,2) and
      // (2,2,2) terms give 720M + 720M(M-1) + 120M(M-1)(M-2)
      // = 120 M (M+1) (M+2). Verified against Monte Carlo and quadrature.
      return 120.0 * m * (m + 1.0) * (m + 2.0) * b2 * b2 * b2;
  }
}

BiasTerms entropy_bias_theoretical(const NoiseRegime& r) {
  BiasTerms terms;
  terms.leading = (r.d - 1.0) / (2.0 * r.n);
  const double b2 = r.b * r.b;
  terms.noise_term1 = r.d * r.M * b2 / (r.p_min * r.n * r.n);
  terms.noise_term2 = r.d * r.M * b2 / (r.p_min * r.p_min * r.n * r.n * r.n);
  terms.noise_term3 = r.d * r.M * r.M * b2 * b2 /
                      (r.p_min * r.p_min * r.p_min * r.n * r.n * r.n * r.n);
  return terms;
}

double entropy_sigma2(const ProbabilityTable& p) {
  double second = 0.0;
  double h = 0.0;
  for (double v : p.probs) {
    if (v <= 0) continue;
    const double lv = std::log(v);
    second += v * lv * lv;
    h -= v * lv;
  }
  return second - h * h;
}

double entropy_mse_theoretical(const ProbabilityTable& p, double n) {
  return entropy_sigma2(p) / n;
}

EntropyMonteCarlo entropy_estimator_monte_carlo(const ProbabilityTable& p,
                                                uint64_t n, size_t M, double b,
                                                size_t trials,
                                                RandomSource& rng) {
  if (trials < 1000) {
    throw std::invalid_argument("entropy oracle needs at least 10^3 trials");
  }
  const size_t d = p.probs.size();
  double true_entropy = 0.0;
  for (double v : p.probs) {
    if (v > 0) true_entropy -= v * std::log(v);
  }

  double sum_err = 0.0, sum_err2 = 0.0, sum_err4 = 0.0;
  std::vector<double> cells(d);
  for (size_t t = 0; t < trials; ++t) {
    // Multinomial counts via sequential binomial splits.
    uint64_t remaining = n;
    double prob_left = 1.0;
    for (size_t i = 0; i < d; ++i) {
      if (i + 1 == d) {
        cells[i] = static_cast<double>(remaining);
      } else if (remaining == 0 || prob_left <= 0) {
        cells[i] = 0.0;
      } else {
        const double q = std::min(p.probs[i] / prob_left, 1.0);
        std::binomial_distribution<uint64_t> dist(remaining, q);
        const uint64_t c = dist(rng.engine());
        cells[i] = static_cast<double>(c);
        remaining -= c;
        prob_left -= p.probs[i];
      }
    }
    if (b > 0) {
      for (size_t i = 0; i < d; ++i) {
        for (size_t j = 0; j < M; ++j) {
          cells[i] += rng.next_laplace(0.0, b);
        }
      }
    }
    double h = 0.0;
    for (size_t i = 0; i < d; ++i) {
      const double q = cells[i] / static_cast<double>(n);
      if (q > 0) h -= q * std::log(q);
    }
    const double err = h - true_entropy;
    sum_err += err;
    sum_err2 += err * err;
    sum_err4 += err * err * err * err;
  }

  const double t = static_cast<double>(trials);
  EntropyMonteCarlo result;
  result.trials = trials;
  result.bias = sum_err / t;
  result.mse = sum_err2 / t;
  const double var_err =
      std::max(sum_err2 / t - result.bias * result.bias, 0.0);
  result.se_bias = std::sqrt(var_err / t);
  const double var_sq =
      std::max(sum_err4 / t - (sum_err2 / t) * (sum_err2 / t), 0.0);
  result.se_mse = std::sqrt(var_sq / t);
  return result;
}

}  // namespace dpa
