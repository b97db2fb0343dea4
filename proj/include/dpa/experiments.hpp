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

#ifndef DPA_EXPERIMENTS_HPP
#define DPA_EXPERIMENTS_HPP

#include <iosfwd>

#include "dpa/bounds.hpp"
#include "dpa/distributed.hpp"
#include "dpa/stream.hpp"

namespace dpa {

// The committed 7-attribute benchmark network: six binary attributes and one
// ternary one in a chain, joint domain size 192, entropy 5.12 bits (checked
// exactly by the test suite via full enumeration).
BayesNet synthetic_bn_fixture();

struct ExperimentConfig {
  std::string experiment = "bn";  // bn | stream | entropy-oracle
  std::vector<double> epsilons{0.1, 0.2, 0.5, 1.0};
  std::vector<size_t> holders{3};
  std::vector<size_t> degrees{1};
  size_t repetitions = 50;
  uint64_t seed = 1;
  std::string out;

  // bn experiment
  size_t n_rows = 4000;

  // stream experiment
  uint64_t stream_length = 10000;
  uint64_t universe = 10000;
  std::vector<std::string> kinds{"dwork", "opt-bernoulli", "laplace",
                                 "quantized"};
  std::vector<uint64_t> m_values{100, 1000};
  double alpha = 0.05;
  std::string distribution = "uniform";

  // entropy oracle
  std::vector<double> noise_scales{0.0, 2.0, 5.0};
  std::vector<size_t> oracle_holders{1, 4};
  uint64_t oracle_n = 1000;
  size_t oracle_trials = 100000;

  // Restores the reported large-scale parameters (n = 40000, 100 reps,
  // T = |U| = 10^5, 300 reps for streams).
  void apply_paper_scale();

  // Key-value text file, one `key = value` per line, lists comma-separated.
  static ExperimentConfig load(const std::string& path);
};

// Emits CSV rows (strategy, epsilon, M, k, mean_cross_entropy_bits,
// stderr_bits). Baseline rows (true-net, naive-bayes, non-private) leave
// epsilon empty. The first line records the master seed as a `# seed=`
// comment so a run is reproducible byte for byte.
void run_bn_experiment(const ExperimentConfig& config, std::ostream& out);

// Emits CSV rows (kind, epsilon, m, empirical_mse, theoretical_mse,
// empirical_pr_error, alpha).
void run_stream_experiment(const ExperimentConfig& config, std::ostream& out);

// Emits CSV rows (n, d, M, b, empirical_bias, theoretical_leading,
// empirical_mse, sigma2_over_n), entropies in nats.
void run_entropy_oracle(const ExperimentConfig& config, std::ostream& out);

}  // namespace dpa

#endif  // DPA_EXPERIMENTS_HPP
