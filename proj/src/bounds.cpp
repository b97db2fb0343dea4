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

#include "dpa/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace dpa {

NelderMeadResult nelder_mead(
    const std::function<double(const std::vector<double>&)>& objective,
    std::vector<double> start,
    const std::function<void(std::vector<double>&)>& project,
    const NelderMeadOptions& options) {
  constexpr double kReflect = 1.0, kExpand = 2.0, kContract = 0.5,
                   kShrink = 0.5;
  const size_t n = start.size();

  auto eval = [&](std::vector<double> point) {
    project(point);
    return std::make_pair(point, objective(point));
  };

  std::vector<std::pair<std::vector<double>, double>> simplex;
  simplex.push_back(eval(start));
  for (size_t i = 0; i < n; ++i) {
    std::vector<double> vertex = start;
    vertex[i] += vertex[i] != 0 ? 0.1 * vertex[i] : 0.05;
    simplex.push_back(eval(vertex));
  }

  auto by_value = [](const auto& a, const auto& b) {
    return a.second < b.second;
  };

  for (int iter = 0; iter < options.max_iterations; ++iter) {
    std::sort(simplex.begin(), simplex.end(), by_value);
    const double spread =
        std::abs(simplex.back().second - simplex.front().second);
    if (spread <= options.tolerance * (1.0 + std::abs(simplex[0].second))) {
      break;
    }

    std::vector<double> centroid(n, 0.0);
    for (size_t v = 0; v < n; ++v) {
      for (size_t i = 0; i < n; ++i) centroid[i] += simplex[v].first[i];
    }
    for (double& c : centroid) c /= static_cast<double>(n);

    auto blend = [&](const std::vector<double>& from, double scale) {
      std::vector<double> point(n);
      for (size_t i = 0; i < n; ++i) {
        point[i] = centroid[i] + scale * (centroid[i] - from[i]);
      }
      return point;
    };

    const auto& worst = simplex.back();
    auto reflected = eval(blend(worst.first, kReflect));
    if (reflected.second < simplex.front().second) {
      auto expanded = eval(blend(worst.first, kExpand));
      simplex.back() = expanded.second < reflected.second ? expanded
                                                          : reflected;
    } else if (reflected.second < simplex[n - 1].second) {
      simplex.back() = reflected;
    } else {
      const bool outside = reflected.second < worst.second;
      auto contracted =
          eval(blend(worst.first, outside ? kContract : -kContract));
      if (contracted.second <
          (outside ? reflected.second : worst.second)) {
        simplex.back() = contracted;
      } else {
        for (size_t v = 1; v <= n; ++v) {
          std::vector<double> point(n);
          for (size_t i = 0; i < n; ++i) {
            point[i] = simplex[0].first[i] +
                       kShrink * (simplex[v].first[i] - simplex[0].first[i]);
          }
          simplex[v] = eval(point);
        }
      }
    }
  }

  std::sort(simplex.begin(), simplex.end(), by_value);
  return {simplex.front().first, simplex.front().second};
}

NelderMeadResult minimize_multistart(
    const std::function<double(const std::vector<double>&)>& objective,
    const std::vector<std::vector<double>>& starts,
    const std::function<void(std::vector<double>&)>& project,
    const NelderMeadOptions& options) {
  NelderMeadResult best;
  bool first = true;
  for (const auto& start : starts) {
    const NelderMeadResult result =
        nelder_mead(objective, start, project, options);
    if (first || result.value < best.value) {
      best = result;
      first = false;
    }
  }
  return best;
}

namespace {

constexpr double kDeltaFloor = 1e-9;

void project_box(std::vector<double>& x) {
  for (double& v : x) v = std::clamp(v, kDeltaFloor, 1.0 - kDeltaFloor);
}

void project_sample_size(std::vector<double>& x) {
  project_box(x);
  const double sum = x[2] + x[3];
  if (sum >= 1.0 - kDeltaFloor) {
    const double scale = (1.0 - kDeltaFloor) / sum;
    x[2] *= scale;
    x[3] *= scale;
  }
}

// The middle (Chernoff) term constant: 8/eps^2 for the dwork family,
// 1/(2 tanh^2(eps/2)) for the optimally tuned Bernoulli pair.
double middle_constant(double eps, EstimatorKind kind) {
  if (kind == EstimatorKind::opt_bernoulli) {
    const double t = std::tanh(eps / 2.0);
    return 1.0 / (2.0 * t * t);
  }
  return 8.0 / (eps * eps);
}

}  // namespace

double sample_size_objective(double eps, double alpha, double beta,
                             EstimatorKind kind,
                             const std::array<double, 4>& d) {
  const double m1 = 1.0 / (2.0 * alpha * alpha * (1.0 - d[0]) * (1.0 - d[0])) *
                    std::log(2.0 / (beta * d[2]));
  const double m2 = middle_constant(eps, kind) /
                    (alpha * alpha * d[0] * d[0] * (1.0 - d[1]) * (1.0 - d[1])) *
                    std::log(2.0 / (beta * d[3]));
  const double m3 = 1.0 / (eps * alpha * d[0] * d[1]) *
                    std::log(1.0 / (beta * (1.0 - d[2] - d[3])));
  return std::max({m1, m2, m3});
}

SampleSizeSolution optimize_sample_size(double eps, double alpha, double beta,
                                        EstimatorKind kind) {
  if (!(eps > 0) || !(alpha > 0 && alpha < 1) || !(beta > 0 && beta < 1)) {
    throw std::invalid_argument("optimize_sample_size: bad parameters");
  }
  auto objective = [&](const std::vector<double>& x) {
    return sample_size_objective(eps, alpha, beta, kind,
                                 {x[0], x[1], x[2], x[3]});
  };

  // 16 deterministic starts spanning the box corners.
  std::vector<std::vector<double>> starts;
  for (double a : {0.25, 0.75}) {
    for (double b2 : {0.25, 0.75}) {
      for (double c : {0.25, 0.75}) {
        for (double e : {0.25, 0.75}) {
          starts.push_back({a, b2, c, e});
        }
      }
    }
  }
  const NelderMeadResult best =
      minimize_multistart(objective, starts, project_sample_size);

  SampleSizeSolution solution;
  solution.deltas = {best.x[0], best.x[1], best.x[2], best.x[3]};
  solution.m_star = static_cast<uint64_t>(std::ceil(best.value));
  const auto& d = solution.deltas;
  solution.m1 = 1.0 /
                (2.0 * alpha * alpha * (1.0 - d[0]) * (1.0 - d[0])) *
                std::log(2.0 / (beta * d[2]));
  solution.m2 = middle_constant(eps, kind) /
                (alpha * alpha * d[0] * d[0] * (1.0 - d[1]) * (1.0 - d[1])) *
                std::log(2.0 / (beta * d[3]));
  solution.m3 = 1.0 / (eps * alpha * d[0] * d[1]) *
                std::log(1.0 / (beta * (1.0 - d[2] - d[3])));
  return solution;
}

double error_bound_objective(double eps, double alpha, uint64_t m,
                             EstimatorKind kind,
                             const std::array<double, 2>& d) {
  const double md = static_cast<double>(m);
  const double sampling =
      2.0 * std::exp(-2.0 * md * alpha * alpha * (1.0 - d[0]) * (1.0 - d[0]));
  double chernoff;
  if (kind == EstimatorKind::opt_bernoulli) {
    const double t = std::tanh(eps / 2.0);
    chernoff = 2.0 * std::exp(-2.0 * md * t * t * alpha * alpha * d[0] * d[0] *
                              (1.0 - d[1]) * (1.0 - d[1]));
  } else {
    chernoff = 2.0 * std::exp(-md * eps * eps * alpha * alpha * d[0] * d[0] *
                              (1.0 - d[1]) * (1.0 - d[1]) / 8.0);
  }
  const double output_noise = std::exp(-eps * alpha * md * d[0] * d[1]);
  return sampling + chernoff + output_noise;
}

ErrorBoundSolution tightest_error_bound(double eps, double alpha, uint64_t m,
                                        EstimatorKind kind) {
  if (!(eps > 0) || !(alpha > 0) || m < 1) {
    throw std::invalid_argument("tightest_error_bound: bad parameters");
  }
  auto objective = [&](const std::vector<double>& x) {
    return error_bound_objective(eps, alpha, m, kind, {x[0], x[1]});
  };
  std::vector<std::vector<double>> starts;
  for (double a : {0.2, 0.4, 0.6, 0.8}) {
    for (double b : {0.2, 0.4, 0.6, 0.8}) {
      starts.push_back({a, b});
    }
  }
  const NelderMeadResult best =
      minimize_multistart(objective, starts, project_box);
  return {best.value, {best.x[0], best.x[1]}};
}

}  // namespace dpa
