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

#ifndef DPA_DISTRIBUTED_HPP
#define DPA_DISTRIBUTED_HPP

#include <memory>
#include <mutex>
#include <thread>

#include "dpa/learn.hpp"
#include "dpa/protocol.hpp"

namespace dpa {

// Row i of the pooled dataset goes to holder i mod M; sizes differ by at
// most one.
std::vector<Dataset> partition_round_robin(const Dataset& data,
                                           size_t m_holders);

struct LedgerEntry {
  std::string kind;
  double epsilon;
};

// Session configuration a holder is set up with before any messages flow.
// The protocol itself only moves the fields of ProtocolMessage; degree and
// total budget are public parameters of the run.
struct HolderConfig {
  double total_budget = 0;
  size_t degree = 1;
  uint64_t seed = 0;
  bool inject_noise = true;  // test hook: exact replies, accounting kept
  // In exact mode the local model is learned at full degree N-1 so that it
  // encodes the local empirical distribution losslessly.
  bool exact_model = false;
};

// A data holder: private dataset, per-query budget ledger, local randomness.
// The dataset never crosses the wire; every reply is built from a
// differentially private mechanism (or an exact value in the test-only
// noise-free mode).
class HolderEndpoint {
 public:
  HolderEndpoint(size_t id, Dataset data, HolderConfig config);

  ProtocolMessage handle(const ProtocolMessage& query);

  size_t id() const { return id_; }
  size_t row_count() const { return data_.rows.size(); }
  const std::vector<LedgerEntry>& ledger() const { return ledger_; }
  double spent() const;
  const AttributeSchema& schema() const { return data_.schema; }

 private:
  bool try_debit(const std::string& kind, double epsilon);
  ProtocolMessage handle_freq(const ProtocolMessage& query);
  ProtocolMessage handle_vote(const ProtocolMessage& query);
  ProtocolMessage handle_model(const ProtocolMessage& query);

  size_t id_;
  Dataset data_;
  HolderConfig config_;
  RandomSource rng_;
  std::vector<LedgerEntry> ledger_;
  // Local sufficient statistics, built once on the first vote query (the
  // dataset is immutable).
  std::unique_ptr<JointTableSet> vote_stats_;
  // handle() serializes access; behind a pointer so holders stay movable.
  std::unique_ptr<std::mutex> mutex_ = std::make_unique<std::mutex>();
};

// Direct transport: messages are still serialized and re-parsed on both
// legs, so the transcript and the enforcement of the wire schema are
// identical to the socket path.
class InProcessTransport : public Transport {
 public:
  explicit InProcessTransport(std::vector<HolderEndpoint>* holders)
      : holders_(holders) {}
  size_t holder_count() const override { return holders_->size(); }
  ProtocolMessage exchange(size_t holder,
                           const ProtocolMessage& query) override;

 private:
  std::vector<HolderEndpoint>* holders_;
};

// Loopback TCP transport, one connection per holder, newline-delimited
// messages. Each holder is served by its own thread.
class SocketTransport : public Transport {
 public:
  explicit SocketTransport(std::vector<HolderEndpoint>* holders);
  ~SocketTransport() override;
  size_t holder_count() const override;
  ProtocolMessage exchange(size_t holder,
                           const ProtocolMessage& query) override;

 private:
  struct Channel;
  std::vector<std::unique_ptr<Channel>> channels_;
};

struct ProtocolOptions {
  std::string run_id = "run";
  bool inject_noise = true;  // analyst-side test hook, mirrors HolderConfig
};

struct NoisySsResult {
  BNStructure structure;
  JointTableSet merged;  // cached global tables; parameter learning is free
};

// Fetches one noisy (k+1)-dimensional frequency table per subset from every
// holder at budget eps / C(N, k+1) each, merges by summation, and runs the
// greedy argmax over the merged noisy statistics.
NoisySsResult learn_structure_noisy_ss(Transport& transport,
                                       const AttributeSchema& schema,
                                       size_t k, double eps,
                                       const ProtocolOptions& options);

// N-1 voting rounds; each holder answers with its exponential-mechanism pick
// at eps1/(N-1) and the most-voted pair is added. Ties go to the earliest
// pair in the candidate enumeration order.
BNStructure learn_structure_majority_vote(Transport& transport,
                                          const AttributeSchema& schema,
                                          size_t k, double eps1,
                                          const ProtocolOptions& options);

struct ShareModelResult {
  BNStructure structure;
  Dataset synthetic;          // pooled synthetic rows (empty in exact mode)
  std::vector<BayesNet> local_models;
  JointTableSet pooled_stats;
};

// Each holder shares its locally learned private model; the analyst samples
// n_j synthetic rows per model, pools them, and learns the global structure
// non-privately from the pool. In exact mode the pool is replaced by the
// models' expected statistics.
ShareModelResult learn_structure_share_model(Transport& transport,
                                             const AttributeSchema& schema,
                                             size_t k, double eps,
                                             RandomSource& rng,
                                             const ProtocolOptions& options);

// Parameter learning. With cached statistics the merged tables are reused
// and no budget is consumed; otherwise N frequency queries per holder at
// eps2/N each are issued and merged.
ConditionalTables learn_parameters_distributed(
    Transport& transport, const AttributeSchema& schema,
    const BNStructure& structure, std::optional<double> eps2,
    const JointTableSet* cached, const ProtocolOptions& options,
    bool add_one_smoothing = false);

}  // namespace dpa

#endif  // DPA_DISTRIBUTED_HPP
