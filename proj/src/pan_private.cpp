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

#include "dpa/pan_private.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace dpa {
namespace {

double bernoulli_gap(const CellDistributions& laws) {
  return laws.upd_bernoulli.p - laws.init_bernoulli.p;
}

double draw(const CellDistributions& laws, bool updated, RandomSource& rng) {
  if (laws.binary) {
    const double p =
        updated ? laws.upd_bernoulli.p : laws.init_bernoulli.p;
    return rng.next_bernoulli(p) ? 1.0 : 0.0;
  }
  const LaplaceLaw& law = updated ? laws.upd_laplace : laws.init_laplace;
  return rng.next_laplace(law.mu, law.b);
}

}  // namespace

std::string to_string(EstimatorKind kind) {
  switch (kind) {
    case EstimatorKind::dwork:
      return "dwork";
    case EstimatorKind::opt_bernoulli:
      return "opt-bernoulli";
    case EstimatorKind::laplace:
      return "laplace";
    case EstimatorKind::quantized_laplace:
      return "quantized";
  }
  return "unknown";
}

EstimatorKind estimator_kind_from_string(const std::string& s) {
  if (s == "dwork") return EstimatorKind::dwork;
  if (s == "opt-bernoulli" || s == "opt_bernoulli") {
    return EstimatorKind::opt_bernoulli;
  }
  if (s == "laplace") return EstimatorKind::laplace;
  if (s == "quantized" || s == "quantized-laplace" ||
      s == "quantized_laplace") {
    return EstimatorKind::quantized_laplace;
  }
  throw std::invalid_argument("unknown estimator kind '" + s + "'");
}

CellDistributions cell_distributions(EstimatorKind kind, double eps,
                                     double mu_init, double mu_upd) {
  if (!(eps > 0)) {
    throw std::invalid_argument("cell_distributions: eps must be positive");
  }
  CellDistributions laws;
  switch (kind) {
    case EstimatorKind::dwork:
      laws.init_bernoulli.p = 0.5;
      laws.upd_bernoulli.p = 0.5 + eps / 4.0;
      break;
    case EstimatorKind::opt_bernoulli: {
      // Parameters symmetric around c = 1/2 at the largest separation the
      // privacy constraint allows: x = tanh(eps/2) * c.
      const double x = std::tanh(eps / 2.0);
      laws.init_bernoulli.p = 0.5 * (1.0 - x);
      laws.upd_bernoulli.p = 0.5 * (1.0 + x);
      break;
    }
    case EstimatorKind::laplace: {
      if (!(mu_init < mu_upd)) {
        throw std::invalid_argument("laplace kind requires mu_init < mu_upd");
      }
      laws.binary = false;
      const double b = (mu_upd - mu_init) / eps;
      laws.init_laplace = {mu_init, b};
      laws.upd_laplace = {mu_upd, b};
      break;
    }
    case EstimatorKind::quantized_laplace: {
      const double q = 0.5 * std::exp(-eps / 2.0);
      laws.init_bernoulli.p = q;
      laws.upd_bernoulli.p = 1.0 - q;
      break;
    }
  }
  return laws;
}

PanPrivateState make_estimator(EstimatorKind kind, double eps, uint64_t m,
                               uint64_t universe_size, RandomSource rng,
                               double mu_init, double mu_upd) {
  if (!(eps > 0) || eps > 0.5) {
    throw std::invalid_argument("make_estimator: requires 0 < eps <= 1/2");
  }
  if (m < 1 || m > universe_size) {
    throw std::invalid_argument(
        "make_estimator: requires 1 <= m <= universe_size");
  }
  PanPrivateState state;
  state.kind = kind;
  state.eps = eps;
  state.universe_size = universe_size;
  state.laws = cell_distributions(kind, eps, mu_init, mu_upd);
  state.rng = rng;

  // Partial Fisher-Yates over the universe index space.
  std::vector<uint64_t> ids(universe_size);
  std::iota(ids.begin(), ids.end(), uint64_t{1});
  state.sample.reserve(m);
  for (uint64_t i = 0; i < m; ++i) {
    const uint64_t j = i + state.rng.next_index(universe_size - i);
    std::swap(ids[i], ids[j]);
    state.sample.push_back(ids[i]);
  }
  state.index.assign(universe_size + 1, PanPrivateState::kNotSampled);
  for (size_t i = 0; i < state.sample.size(); ++i) {
    state.index[state.sample[i]] = static_cast<uint32_t>(i);
  }
  state.cells.resize(m);
  for (double& cell : state.cells) {
    cell = draw(state.laws, /*updated=*/false, state.rng);
  }
  return state;
}

void ingest(PanPrivateState& state, uint64_t id, bool deleted) {
  if (id < 1 || id > state.universe_size) {
    throw std::invalid_argument("ingest: id outside the universe");
  }
  const uint32_t cell = state.index[id];
  if (cell == PanPrivateState::kNotSampled) return;
  state.cells[cell] = draw(state.laws, /*updated=*/!deleted, state.rng);
}

std::vector<double> snapshot_state(const PanPrivateState& state) {
  return state.cells;
}

double finalize_density(const PanPrivateState& state, RandomSource& rng) {
  const double m = static_cast<double>(state.m());
  double mean = 0.0;
  for (double cell : state.cells) mean += cell;
  mean /= m;

  double debiased;
  if (state.laws.binary) {
    const double gap = bernoulli_gap(state.laws);
    debiased = (mean - state.laws.init_bernoulli.p) / gap;
  } else {
    debiased = (mean - state.laws.init_laplace.mu) /
               (state.laws.upd_laplace.mu - state.laws.init_laplace.mu);
  }
  return debiased + rng.next_laplace(0.0, 1.0 / (state.eps * m));
}

double clip_density(double estimate) {
  return std::clamp(estimate, 0.0, 1.0);
}

double actual_budget_used(EstimatorKind kind, double eps) {
  if (!(eps > 0) || eps > 0.5) {
    throw std::invalid_argument("actual_budget_used: requires 0 < eps <= 1/2");
  }
  switch (kind) {
    case EstimatorKind::dwork:
      // Outcome ratios are 1 + eps/2 and 1 - eps/2; the binding one is the
      // latter. Strictly below eps for eps in (0, 1/2].
      return std::max(std::log(1.0 + eps / 2.0), -std::log(1.0 - eps / 2.0));
    case EstimatorKind::opt_bernoulli:
      // Both outcomes attain e^{+-eps} exactly.
      return eps;
    case EstimatorKind::laplace:
      // The density ratio equals e^{+-eps} everywhere outside
      // (mu_init, mu_upd).
      return eps;
    case EstimatorKind::quantized_laplace: {
      const CellDistributions laws =
          cell_distributions(EstimatorKind::quantized_laplace, eps);
      const double r1 = laws.upd_bernoulli.p / laws.init_bernoulli.p;
      const double r0 =
          (1.0 - laws.upd_bernoulli.p) / (1.0 - laws.init_bernoulli.p);
      return std::max(std::abs(std::log(r1)), std::abs(std::log(r0)));
    }
  }
  throw std::invalid_argument("actual_budget_used: unknown kind");
}

double theoretical_mse(EstimatorKind kind, double eps, uint64_t m,
                       double d_sub) {
  const double md = static_cast<double>(m);
  const double output_noise_var = 2.0 / (md * md * eps * eps);
  switch (kind) {
    case EstimatorKind::dwork:
      return 4.0 / (md * eps * eps) - d_sub * d_sub / md + output_noise_var;
    case EstimatorKind::laplace:
      return 2.0 * (md + 1.0) / (md * md * eps * eps);
    case EstimatorKind::opt_bernoulli:
    case EstimatorKind::quantized_laplace: {
      const CellDistributions laws = cell_distributions(kind, eps);
      const double pi = laws.init_bernoulli.p;
      const double pu = laws.upd_bernoulli.p;
      const double gap = pu - pi;
      // Law of total variance for one cell, then scale by the debias factor.
      const double var_cell = pi * (1 - pi) +
                              d_sub * (pu * (1 - pu) - pi * (1 - pi)) +
                              d_sub * (1 - d_sub) * gap * gap;
      return var_cell / (md * gap * gap) + output_noise_var;
    }
  }
  throw std::invalid_argument("theoretical_mse: unknown kind");
}

BinaryQuantizer design_binary_quantizer(double mu_init, double mu_upd,
                                        double eps) {
  if (!(mu_init < mu_upd)) {
    throw std::invalid_argument(
        "design_binary_quantizer: requires mu_init < mu_upd");
  }
  if (!(eps > 0)) {
    throw std::invalid_argument("design_binary_quantizer: eps must be > 0");
  }
  BinaryQuantizer q;
  q.boundary = 0.5 * (mu_init + mu_upd);
  const double b = (mu_upd - mu_init) / eps;
  q.a1 = mu_init - b * std::exp(-eps / 2.0);
  q.a2 = mu_upd + b * std::exp(-eps / 2.0);
  q.p_init = 0.5 * std::exp(-eps / 2.0);
  q.p_upd = 1.0 - q.p_init;
  return q;
}

}  // namespace dpa
