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

#ifndef DPA_PAN_PRIVATE_HPP
#define DPA_PAN_PRIVATE_HPP

#include <string>
#include <vector>

#include "dpa/random.hpp"

namespace dpa {

// The four pan-private density estimators. All share one lifecycle: sample m
// users, fill one noisy cell per sampled user from the init law, redraw a
// user's cell from the update law whenever that user arrives, and debias the
// cell mean at output time.
enum class EstimatorKind { dwork, opt_bernoulli, laplace, quantized_laplace };

std::string to_string(EstimatorKind kind);
EstimatorKind estimator_kind_from_string(const std::string& s);

struct BernoulliLaw {
  double p = 0;
};
struct LaplaceLaw {
  double mu = 0;
  double b = 0;
};

// The init/update cell distributions of an estimator kind at budget eps.
// For the laplace kind the locations are a free choice (accuracy is
// invariant to them); the scale is fixed by b = (mu_upd - mu_init) / eps.
struct CellDistributions {
  bool binary = true;
  BernoulliLaw init_bernoulli, upd_bernoulli;
  LaplaceLaw init_laplace, upd_laplace;
};

CellDistributions cell_distributions(EstimatorKind kind, double eps,
                                     double mu_init = 0.0,
                                     double mu_upd = 1.0);

// Internal state: the sampled user set and one noisy cell per sampled user.
// Together with the public kind and eps, the cells are the entire content an
// intruder can observe.
struct PanPrivateState {
  EstimatorKind kind = EstimatorKind::dwork;
  double eps = 0;
  uint64_t universe_size = 0;
  CellDistributions laws;
  std::vector<uint64_t> sample;  // ordered sampled ids
  // id -> cell position, kNotSampled elsewhere. Flat so ingest is one load.
  std::vector<uint32_t> index;
  std::vector<double> cells;
  RandomSource rng{0};

  static constexpr uint32_t kNotSampled = UINT32_MAX;
  size_t m() const { return sample.size(); }
  bool is_sampled(uint64_t id) const { return index[id] != kNotSampled; }
};

// Samples m ids without replacement (partial Fisher-Yates over the universe)
// and draws every cell i.i.d. from the init law. Requires eps in (0, 1/2]
// and 1 <= m <= universe_size.
PanPrivateState make_estimator(EstimatorKind kind, double eps, uint64_t m,
                               uint64_t universe_size, RandomSource rng,
                               double mu_init = 0.0, double mu_upd = 1.0);

// Redraws the user's cell from the update law (or from the init law on a
// delete). Ids outside the sample leave the state untouched; repeated
// arrivals redraw every time, so the cell law depends only on presence.
void ingest(PanPrivateState& state, uint64_t id, bool deleted = false);

// Exact copy of the cells, for intrusion simulation. No side effects.
std::vector<double> snapshot_state(const PanPrivateState& state);

// Debiased cell mean plus Laplace(0, 1/(eps*m)) output noise. The estimate
// is intentionally not clipped to [0,1]; clipping would break unbiasedness.
double finalize_density(const PanPrivateState& state, RandomSource& rng);

// Convenience: [0,1]-clipped view of an estimate, for display only.
double clip_density(double estimate);

// sup over outcomes of |ln(upd_law(o) / init_law(o))|: the privacy budget
// the state actually consumes. Equals eps exactly for opt_bernoulli and
// laplace; strictly below eps for dwork and quantized_laplace.
double actual_budget_used(EstimatorKind kind, double eps);

// Exact conditional MSE of the estimator given d(S_M) = d_sub (variance of
// the output around d(S_M), including the output noise term).
double theoretical_mse(EstimatorKind kind, double eps, uint64_t m,
                       double d_sub);

// Two-level minimum-MSE quantizer for the equal-weight mixture of the two
// Laplace cell laws: boundary at the midpoint, conditional-mean
// representation points, and the Bernoulli pair induced on {a1 -> 0,
// a2 -> 1}.
struct BinaryQuantizer {
  double boundary = 0;
  double a1 = 0;
  double a2 = 0;
  double p_init = 0;  // Pr(q(x) = high | not appeared) = e^{-eps/2}/2
  double p_upd = 0;   // Pr(q(x) = high | appeared) = 1 - e^{-eps/2}/2
};

BinaryQuantizer design_binary_quantizer(double mu_init, double mu_upd,
                                        double eps);

}  // namespace dpa

#endif  // DPA_PAN_PRIVATE_HPP
