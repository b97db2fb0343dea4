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

#ifndef DPA_BOUNDS_HPP
#define DPA_BOUNDS_HPP

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "dpa/pan_private.hpp"

namespace dpa {

// Derivative-free simplex minimizer with an optional projection applied to
// every evaluated point (box and simplex constraints).
struct NelderMeadOptions {
  int max_iterations = 5000;
  double tolerance = 1e-10;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0;
};

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    std::vector<double> start,
    const std::function<void(std::vector<double>&)>& project,
    const NelderMeadOptions& options = {});

// Runs one restart per start point and keeps the best minimum.
NelderMeadResult minimize_multistart(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<std::vector<double>>& starts,
    const std::function<void(std::vector<double>&)>& project,
    const NelderMeadOptions& options = {});

// The delta-parameterized constrained minimization instances behind the
// sample-size and error-bound computations: decision variables
// delta_1..delta_4 in (0,1) with delta_3 + delta_4 < 1 (sample size), or
// delta_1, delta_2 in (0,1) (error bound).
struct BoundProblem {
  double epsilon = 0;
  double alpha = 0;
  std::optional<double> beta;  // set for sample-size problems
  std::optional<uint64_t> m;   // set for error-bound problems
  EstimatorKind kind = EstimatorKind::dwork;
};

// max(m1, m2, m3) at the given deltas. The middle term uses the
// 8/eps^2 constant for the dwork and laplace families and the
// 1/(2 tanh^2(eps/2)) constant for opt_bernoulli.
double sample_size_objective(double eps, double alpha, double beta,
                             EstimatorKind kind,
                             const std::array<double, 4>& deltas);

struct SampleSizeSolution {
  uint64_t m_star = 0;       // ceil of the minimized objective
  std::array<double, 4> deltas{};
  double m1 = 0, m2 = 0, m3 = 0;  // the three terms at the optimum
};

SampleSizeSolution optimize_sample_size(double eps, double alpha, double beta,
                                        EstimatorKind kind);

// The three-term bound beta(delta_1, delta_2) at sample size m.
double error_bound_objective(double eps, double alpha, uint64_t m,
                             EstimatorKind kind,
                             const std::array<double, 2>& deltas);

struct ErrorBoundSolution {
  double beta_star = 0;
  std::array<double, 2> deltas{};
};

ErrorBoundSolution tightest_error_bound(double eps, double alpha, uint64_t m,
                                        EstimatorKind kind);

}  // namespace dpa

#endif  // DPA_BOUNDS_HPP
