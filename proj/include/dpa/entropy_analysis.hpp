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

#ifndef DPA_ENTROPY_ANALYSIS_HPP
#define DPA_ENTROPY_ANALYSIS_HPP

#include "dpa/random.hpp"
#include "dpa/tables.hpp"

// Executable form of the accuracy theory for the distributed differentially
// private entropy estimator: exact low-order moments, the theoretical bias
// and mean-squared-error expressions, and a Monte Carlo oracle that simulates
// the estimation pipeline. All entropies here are in natural-log units;
// multiply by log2(e) at the boundary for bits.

namespace dpa {

// Parameter regime of the estimator: n data points over a joint domain of
// size d, split across M holders, each perturbing with Laplace(0, b) noise.
struct NoiseRegime {
  double n = 0;
  double d = 0;
  double M = 0;
  double b = 0;
  double p_min = 0;

  double theta() const { return M * b * b / (n * n); }
};

// E[c_i^order] for one cell of a Multinomial(n, p) vector, order 1..6.
double multinomial_moment(double n, double p_i, int order);

// E[(eta_1 + ... + eta_M)^order] for i.i.d. Laplace(0, b) terms.
// Odd orders vanish; even orders 2, 4, 6 are 2Mb^2, 12(M^2+M)b^4,
// 120M(M+1)(M+2)b^6.
double laplace_sum_moment(int m_terms, double b, int order);

// Absolute-bias decomposition: the (d-1)/(2n) leading term plus the raw
// magnitudes of the three noise terms (their constants live inside a big-O
// in the theory; the magnitudes are reported as diagnostics).
struct BiasTerms {
  double leading = 0;
  double noise_term1 = 0;  // d M b^2 / (p_min n^2)
  double noise_term2 = 0;  // d M b^2 / (p_min^2 n^3)
  double noise_term3 = 0;  // d M^2 b^4 / (p_min^3 n^4)

  double noise_total() const {
    return noise_term1 + noise_term2 + noise_term3;
  }
  double total() const { return leading + noise_total(); }
};

BiasTerms entropy_bias_theoretical(const NoiseRegime& regime);

// sigma^2 = sum p_i ln^2 p_i - H^2 (nats).
double entropy_sigma2(const ProbabilityTable& p);

// Leading mean-squared-error term sigma^2 / n.
double entropy_mse_theoretical(const ProbabilityTable& p, double n);

struct EntropyMonteCarlo {
  double bias = 0;
  double mse = 0;
  double se_bias = 0;  // standard error of the bias estimate
  double se_mse = 0;   // standard error of the mse estimate
  size_t trials = 0;
};

// Simulates the pipeline: multinomial counts for the pooled data, one
// Laplace(0, b) noise vector per holder, merge, divide by the nominal n,
// entropy. Noise is left unclamped to match the analysis; nonpositive
// estimated cells contribute zero to the entropy functional (they do not
// occur in the analysis regime).
EntropyMonteCarlo entropy_estimator_monte_carlo(const ProbabilityTable& p,
                                                uint64_t n, size_t M, double b,
                                                size_t trials,
                                                RandomSource& rng);

}  // namespace dpa

#endif  // DPA_ENTROPY_ANALYSIS_HPP
