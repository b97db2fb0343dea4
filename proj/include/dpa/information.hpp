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

#ifndef DPA_INFORMATION_HPP
#define DPA_INFORMATION_HPP

#include <functional>

#include "dpa/mechanisms.hpp"
#include "dpa/tables.hpp"

namespace dpa {

// Experiment metrics are reported in bits; the sensitivity lemma and the
// entropy accuracy analysis use natural logarithms. The base is therefore
// explicit on every operation.
enum class LogBase { bits, nats };

// -sum p_i log p_i with 0 log 0 = 0. Entries <= 0 contribute nothing, so the
// functional is defined for noisy tables whose entries were clamped at zero.
double entropy(const ProbabilityTable& p, LogBase base);
inline double entropy_bits(const ProbabilityTable& p) {
  return entropy(p, LogBase::bits);
}
inline double entropy_nats(const ProbabilityTable& p) {
  return entropy(p, LogBase::nats);
}

// I(X;Y) = H(X) + H(Y) - H(X,Y), computed from marginals of the joint and
// clamped below at 0 (noise can drive the raw value negative). x and y must
// be disjoint and together cover joint.attrs.
double mutual_information(const ProbabilityTable& joint,
                          const std::vector<size_t>& x,
                          const std::vector<size_t>& y,
                          LogBase base = LogBase::bits);

// Same quantity by the direct double sum over the joint; kept as an
// independent route for cross-checks. Not clamped.
double mutual_information_direct(const ProbabilityTable& joint,
                                 const std::vector<size_t>& x,
                                 const std::vector<size_t>& y,
                                 LogBase base = LogBase::bits);

// sum p_i log2(p_i / q_i). Mass of p where q is zero yields +infinity, a
// distinguished value rather than an error.
double kl_divergence(const ProbabilityTable& p, const ProbabilityTable& q);

// -sum p_i log2 q_i = H(p) + KL(p||q).
double cross_entropy(const ProbabilityTable& p, const ProbabilityTable& q);

// Monte Carlo cross entropy: -(1/|test|) sum log2 model_eval(x). A zero
// model probability on any row yields +infinity.
double empirical_cross_entropy(
    const Dataset& test,
    const std::function<double(const std::vector<uint32_t>&)>& model_eval);

// Sensitivity of the empirical mutual information under bounded adjacency,
// in natural-log units. The tighter form applies when one of the two
// variables is binary. Requires n >= 2.
Sensitivity mi_sensitivity(uint64_t n, bool binary_involved);

}  // namespace dpa

#endif  // DPA_INFORMATION_HPP
