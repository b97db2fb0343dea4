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

#include "dpa/distributed.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>

#include <netinet/in.h>
#include <sys/socket.h>
#include <unistd.h>

namespace dpa {

std::vector<Dataset> partition_round_robin(const Dataset& data,
                                           size_t m_holders) {
  if (m_holders < 1) {
    throw std::invalid_argument("partition requires at least one holder");
  }
  std::vector<Dataset> parts(m_holders);
  for (auto& part : parts) part.schema = data.schema;
  for (size_t i = 0; i < data.rows.size(); ++i) {
    parts[i % m_holders].rows.push_back(data.rows[i]);
  }
  return parts;
}

HolderEndpoint::HolderEndpoint(size_t id, Dataset data, HolderConfig config)
    : id_(id),
      data_(std::move(data)),
      config_(config),
      rng_(config.seed ^ (0x9e3779b97f4a7c15ULL * (id + 1))) {}

double HolderEndpoint::spent() const {
  double total = 0;
  for (const auto& entry : ledger_) total += entry.epsilon;
  return total;
}

bool HolderEndpoint::try_debit(const std::string& kind, double epsilon) {
  if (spent() + epsilon > config_.total_budget + 1e-12) return false;
  ledger_.push_back({kind, epsilon});
  return true;
}

ProtocolMessage HolderEndpoint::handle(const ProtocolMessage& query) {
  std::lock_guard<std::mutex> lock(*mutex_);
  switch (query.kind) {
    case MessageKind::freq_query:
      return handle_freq(query);
    case MessageKind::vote_query:
      return handle_vote(query);
    case MessageKind::model_query:
      return handle_model(query);
    default:
      throw ProtocolError("holder received a non-query message");
  }
}

ProtocolMessage HolderEndpoint::handle_freq(const ProtocolMessage& query) {
  if (!query.attrs || !query.epsilon) {
    throw ProtocolError("freq_query requires attrs and epsilon");
  }
  ProtocolMessage reply;
  reply.kind = MessageKind::freq_reply;
  reply.run_id = query.run_id;
  reply.round = query.round;
  if (!try_debit("freq_query", *query.epsilon)) {
    return reply;  // refusal: payload omitted
  }
  const FrequencyTable table = build_frequency_table(data_, *query.attrs);
  if (config_.inject_noise) {
    // Bounded adjacency: changing one record moves at most two cells by one
    // each, so the count vector has sensitivity 2.
    reply.counts = perturb_counts(table.counts, Sensitivity(2.0),
                                  PrivacyBudget(*query.epsilon),
                                  /*clamp=*/true, rng_);
  } else {
    reply.counts = table.counts;
  }
  reply.n_j = static_cast<int64_t>(data_.rows.size());
  return reply;
}

ProtocolMessage HolderEndpoint::handle_vote(const ProtocolMessage& query) {
  if (!query.attrs || !query.epsilon) {
    throw ProtocolError("vote_query requires attrs (visited set) and epsilon");
  }
  ProtocolMessage reply;
  reply.kind = MessageKind::vote_reply;
  reply.run_id = query.run_id;
  reply.round = query.round;
  if (!try_debit("vote_query", *query.epsilon)) {
    return reply;
  }

  const AttributeSchema& schema = data_.schema;
  std::vector<size_t> visited;
  for (const auto& name : *query.attrs) {
    visited.push_back(schema.index_of(name));
  }
  std::sort(visited.begin(), visited.end());

  // Score every candidate (X outside V, Pa inside V, |Pa| <= k) by the
  // local empirical mutual information, then pick one: exponential
  // mechanism at the query budget, or plain argmax in the noise-free mode.
  struct LocalCandidate {
    std::string child;
    std::vector<std::string> parents;
    double score;
    bool binary_involved;
  };
  std::vector<LocalCandidate> candidates;
  if (!vote_stats_) {
    vote_stats_ = std::make_unique<JointTableSet>(
        JointTableSet::from_dataset(data_, config_.degree));
  }
  const JointTableSet& stats = *vote_stats_;
  for (size_t x = 0; x < schema.size(); ++x) {
    if (std::binary_search(visited.begin(), visited.end(), x)) continue;
    // Lexicographic subset order over the sorted visited set.
    std::vector<std::vector<size_t>> subsets;
    std::vector<size_t> current;
    struct Rec {
      const std::vector<size_t>& visited;
      size_t k;
      std::vector<std::vector<size_t>>& out;
      void go(std::vector<size_t>& cur, size_t next) {
        out.push_back(cur);
        if (cur.size() == k) return;
        for (size_t i = next; i < visited.size(); ++i) {
          cur.push_back(visited[i]);
          go(cur, i + 1);
          cur.pop_back();
        }
      }
    } rec{visited, std::min(config_.degree, visited.size()), subsets};
    rec.go(current, 0);

    for (const auto& pa : subsets) {
      LocalCandidate cand;
      cand.child = schema.attribute(x).name;
      for (size_t p : pa) cand.parents.push_back(schema.attribute(p).name);
      if (pa.empty()) {
        cand.score = 0.0;
        cand.binary_involved = true;
      } else {
        std::vector<size_t> joint_attrs = pa;
        joint_attrs.push_back(x);
        std::sort(joint_attrs.begin(), joint_attrs.end());
        const ProbabilityTable joint = to_probability(
            stats.project(joint_attrs), static_cast<double>(row_count()));
        cand.score = mutual_information(joint, {x}, pa, LogBase::nats);
        cand.binary_involved = schema.domain_size(x) == 2 ||
                               schema.joint_domain_size(pa) == 2;
      }
      candidates.push_back(std::move(cand));
    }
  }
  if (candidates.empty()) throw ProtocolError("vote_query with no candidates");

  size_t pick = 0;
  if (config_.inject_noise) {
    bool all_binary = true;
    for (const auto& c : candidates) all_binary &= c.binary_involved;
    std::vector<double> scores;
    scores.reserve(candidates.size());
    for (const auto& c : candidates) scores.push_back(c.score);
    pick = exponential_select(scores,
                              mi_sensitivity(row_count(), all_binary),
                              PrivacyBudget(*query.epsilon), rng_);
  } else {
    for (size_t i = 1; i < candidates.size(); ++i) {
      if (candidates[i].score > candidates[pick].score) pick = i;
    }
  }
  reply.pair = AttributePair{candidates[pick].child, candidates[pick].parents};
  return reply;
}

ProtocolMessage HolderEndpoint::handle_model(const ProtocolMessage& query) {
  ProtocolMessage reply;
  reply.kind = MessageKind::model_reply;
  reply.run_id = query.run_id;
  if (!try_debit("model_query", config_.total_budget)) {
    return reply;
  }
  BayesNet net;
  net.schema = data_.schema;
  if (config_.inject_noise) {
    const double half = config_.total_budget / 2.0;
    net.structure = greedy_structure_learn(data_, config_.degree, half, rng_);
    ParameterOptions options;
    options.epsilon2 = half;
    net.parameters =
        learn_parameters_central(data_, net.structure, options, rng_);
  } else {
    const size_t degree = config_.exact_model
                              ? data_.schema.size() - 1
                              : config_.degree;
    net.structure =
        greedy_structure_learn(data_, degree, std::nullopt, rng_);
    net.parameters = learn_parameters_central(data_, net.structure,
                                              ParameterOptions{}, rng_);
  }
  reply.model = nlohmann::json::parse(serialize_model(net));
  reply.n_j = static_cast<int64_t>(data_.rows.size());
  return reply;
}

ProtocolMessage InProcessTransport::exchange(size_t holder,
                                             const ProtocolMessage& query) {
  const std::string query_line = query.to_line();
  record(query_line);
  const ProtocolMessage parsed = ProtocolMessage::from_line(query_line);
  const ProtocolMessage reply = holders_->at(holder).handle(parsed);
  const std::string reply_line = reply.to_line();
  record(reply_line);
  return ProtocolMessage::from_line(reply_line);
}

// One loopback TCP connection per holder; the server side runs the holder's
// handler loop in its own thread.
struct SocketTransport::Channel {
  HolderEndpoint* holder = nullptr;
  int client_fd = -1;
  std::thread server;

  ~Channel() {
    if (client_fd >= 0) ::close(client_fd);
    if (server.joinable()) server.join();
  }
};

namespace {

void write_all(int fd, const std::string& data) {
  size_t sent = 0;
  while (sent < data.size()) {
    const ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, 0);
    if (n <= 0) throw ProtocolError("socket write failed");
    sent += static_cast<size_t>(n);
  }
}

// Reads until '\n'; empty string on orderly shutdown.
std::string read_line(int fd) {
  std::string line;
  char c;
  while (true) {
    const ssize_t n = ::recv(fd, &c, 1, 0);
    if (n == 0) return "";
    if (n < 0) throw ProtocolError("socket read failed");
    if (c == '\n') return line;
    line.push_back(c);
  }
}

}  // namespace

SocketTransport::SocketTransport(std::vector<HolderEndpoint>* holders) {
  for (auto& holder : *holders) {
    auto channel = std::make_unique<Channel>();
    channel->holder = &holder;

    const int listener = ::socket(AF_INET, SOCK_STREAM, 0);
    if (listener < 0) throw ProtocolError("cannot create listener socket");
    sockaddr_in addr{};
    addr.sin_family = AF_INET;
    addr.sin_addr.s_addr = htonl(INADDR_LOOPBACK);
    addr.sin_port = 0;
    if (::bind(listener, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) <
            0 ||
        ::listen(listener, 1) < 0) {
      ::close(listener);
      throw ProtocolError("cannot bind loopback listener");
    }
    socklen_t len = sizeof(addr);
    ::getsockname(listener, reinterpret_cast<sockaddr*>(&addr), &len);

    channel->server = std::thread([listener, holder = &holder]() {
      const int fd = ::accept(listener, nullptr, nullptr);
      ::close(listener);
      if (fd < 0) return;
      while (true) {
        std::string line;
        try {
          line = read_line(fd);
        } catch (const ProtocolError&) {
          break;
        }
        if (line.empty()) break;
        try {
          const ProtocolMessage query = ProtocolMessage::from_line(line);
          const ProtocolMessage reply = holder->handle(query);
          write_all(fd, reply.to_line() + "\n");
        } catch (const std::exception&) {
          break;
        }
      }
      ::close(fd);
    });

    const int client = ::socket(AF_INET, SOCK_STREAM, 0);
    if (client < 0 ||
        ::connect(client, reinterpret_cast<sockaddr*>(&addr), sizeof(addr)) <
            0) {
      if (client >= 0) ::close(client);
      throw ProtocolError("cannot connect to holder channel");
    }
    channel->client_fd = client;
    channels_.push_back(std::move(channel));
  }
}

SocketTransport::~SocketTransport() = default;

size_t SocketTransport::holder_count() const { return channels_.size(); }

ProtocolMessage SocketTransport::exchange(size_t holder,
                                          const ProtocolMessage& query) {
  Channel& channel = *channels_.at(holder);
  const std::string query_line = query.to_line();
  record(query_line);
  write_all(channel.client_fd, query_line + "\n");
  const std::string reply_line = read_line(channel.client_fd);
  if (reply_line.empty()) throw ProtocolError("holder channel closed");
  record(reply_line);
  return ProtocolMessage::from_line(reply_line);
}

namespace {

double binomial(size_t n, size_t k) {
  double result = 1;
  for (size_t i = 0; i < k; ++i) {
    result = result * static_cast<double>(n - i) / static_cast<double>(i + 1);
  }
  return result;
}

}  // namespace

NoisySsResult learn_structure_noisy_ss(Transport& transport,
                                       const AttributeSchema& schema,
                                       size_t k, double eps,
                                       const ProtocolOptions& options) {
  const auto subsets = JointTableSet::subsets(schema.size(), k + 1);
  const double per_table_eps = eps / binomial(schema.size(), k + 1);

  std::vector<FrequencyTable> merged;
  double n_total = 0;
  bool n_known = false;
  for (size_t t = 0; t < subsets.size(); ++t) {
    FrequencyTable table;
    table.attrs = subsets[t];
    for (size_t a : subsets[t]) table.dims.push_back(schema.domain_size(a));
    table.counts.assign(schema.joint_domain_size(subsets[t]), 0.0);

    for (size_t j = 0; j < transport.holder_count(); ++j) {
      ProtocolMessage query;
      query.kind = MessageKind::freq_query;
      query.run_id = options.run_id;
      query.round = static_cast<int64_t>(t);
      query.attrs = std::vector<std::string>{};
      for (size_t a : subsets[t]) {
        query.attrs->push_back(schema.attribute(a).name);
      }
      query.epsilon = per_table_eps;
      const ProtocolMessage reply = transport.exchange(j, query);
      if (reply.is_refusal()) {
        throw ProtocolError("holder " + std::to_string(j) +
                            " refused a frequency query");
      }
      if (reply.counts->size() != table.counts.size()) {
        throw ProtocolError("frequency reply has the wrong shape");
      }
      for (size_t c = 0; c < table.counts.size(); ++c) {
        table.counts[c] += (*reply.counts)[c];
      }
      if (!n_known && reply.n_j) n_total += static_cast<double>(*reply.n_j);
    }
    n_known = true;
    table.n_source = n_total;
    merged.push_back(std::move(table));
  }

  NoisySsResult result{
      {}, JointTableSet::from_tables(schema, k, std::move(merged), n_total)};
  GreedyOptions greedy;  // argmax over the merged noisy statistics
  RandomSource unused(0);
  result.structure =
      greedy_structure_from_stats(result.merged, k, greedy, unused);
  return result;
}

BNStructure learn_structure_majority_vote(Transport& transport,
                                          const AttributeSchema& schema,
                                          size_t k, double eps1,
                                          const ProtocolOptions& options) {
  const size_t n_attrs = schema.size();
  const double round_eps = eps1 / static_cast<double>(n_attrs - 1);

  BNStructure structure;
  for (size_t i = 0; i < n_attrs; ++i) {
    structure.nodes.push_back(schema.attribute(i).name);
  }
  std::vector<size_t> visited{0};
  structure.parent_sets[schema.attribute(0).name] = {};
  structure.insertion_order.push_back(schema.attribute(0).name);

  for (size_t round = 1; round < n_attrs; ++round) {
    std::vector<std::string> visited_names;
    for (size_t v : visited) visited_names.push_back(schema.attribute(v).name);

    std::vector<AttributePair> votes;
    for (size_t j = 0; j < transport.holder_count(); ++j) {
      ProtocolMessage query;
      query.kind = MessageKind::vote_query;
      query.run_id = options.run_id;
      query.round = static_cast<int64_t>(round);
      query.attrs = visited_names;
      query.epsilon = round_eps;
      const ProtocolMessage reply = transport.exchange(j, query);
      if (reply.is_refusal()) {
        throw ProtocolError(
            "holder " + std::to_string(j) +
            " refused a vote query; structure is incomplete after " +
            std::to_string(round - 1) + " rounds");
      }
      votes.push_back(*reply.pair);
    }

    // Candidate enumeration in the same order holders use; the most-voted
    // pair wins and ties break to the earliest candidate.
    std::vector<AttributePair> candidates;
    for (size_t x = 0; x < n_attrs; ++x) {
      if (std::binary_search(visited.begin(), visited.end(), x)) continue;
      std::vector<std::vector<size_t>> subsets;
      std::vector<size_t> current;
      struct Rec {
        const std::vector<size_t>& visited;
        size_t k;
        std::vector<std::vector<size_t>>& out;
        void go(std::vector<size_t>& cur, size_t next) {
          out.push_back(cur);
          if (cur.size() == k) return;
          for (size_t i = next; i < visited.size(); ++i) {
            cur.push_back(visited[i]);
            go(cur, i + 1);
            cur.pop_back();
          }
        }
      } rec{visited, std::min(k, visited.size()), subsets};
      rec.go(current, 0);
      for (const auto& pa : subsets) {
        AttributePair pair;
        pair.child = schema.attribute(x).name;
        for (size_t p : pa) pair.parents.push_back(schema.attribute(p).name);
        candidates.push_back(std::move(pair));
      }
    }

    size_t best = SIZE_MAX;
    size_t best_votes = 0;
    for (size_t c = 0; c < candidates.size(); ++c) {
      size_t count = 0;
      for (const auto& vote : votes) {
        if (vote == candidates[c]) ++count;
      }
      if (count > best_votes) {
        best = c;
        best_votes = count;
      }
    }
    if (best == SIZE_MAX) {
      throw ProtocolError("no vote matched the candidate enumeration");
    }

    const AttributePair& chosen = candidates[best];
    structure.parent_sets[chosen.child] = chosen.parents;
    structure.insertion_order.push_back(chosen.child);
    visited.push_back(schema.index_of(chosen.child));
    std::sort(visited.begin(), visited.end());
  }
  return structure;
}

ShareModelResult learn_structure_share_model(Transport& transport,
                                             const AttributeSchema& schema,
                                             size_t k, double eps,
                                             RandomSource& rng,
                                             const ProtocolOptions& options) {
  (void)eps;  // the holders' total budget; each spends it on its local model
  ShareModelResult result;
  result.synthetic.schema = schema;

  std::optional<JointTableSet> pooled;
  for (size_t j = 0; j < transport.holder_count(); ++j) {
    ProtocolMessage query;
    query.kind = MessageKind::model_query;
    query.run_id = options.run_id;
    const ProtocolMessage reply = transport.exchange(j, query);
    if (reply.is_refusal()) {
      throw ProtocolError("holder " + std::to_string(j) +
                          " refused a model query");
    }
    const BayesNet local = parse_model(reply.model->dump());
    const size_t n_j = static_cast<size_t>(reply.n_j.value_or(0));
    result.local_models.push_back(local);
    if (n_j == 0) continue;  // a holder with no rows contributes nothing

    if (options.inject_noise) {
      const Dataset sample = prior_sample(local, n_j, rng);
      result.synthetic.rows.insert(result.synthetic.rows.end(),
                                   sample.rows.begin(), sample.rows.end());
    } else {
      // Exact mode: the expected statistics of the synthetic sample.
      const JointTableSet stats = JointTableSet::from_joint(
          schema, k, exact_joint(local), static_cast<double>(n_j));
      if (pooled) {
        pooled->add(stats);
      } else {
        pooled = stats;
      }
    }
  }

  if (options.inject_noise) {
    pooled = JointTableSet::from_dataset(result.synthetic, k);
  }
  if (!pooled || !(pooled->n() > 0)) {
    throw ProtocolError("share-model: empty synthetic pool");
  }
  result.pooled_stats = *pooled;

  GreedyOptions greedy;  // no exponential mechanism on the synthetic pool
  RandomSource unused(0);
  result.structure =
      greedy_structure_from_stats(result.pooled_stats, k, greedy, unused);
  return result;
}

ConditionalTables learn_parameters_distributed(
    Transport& transport, const AttributeSchema& schema,
    const BNStructure& structure, std::optional<double> eps2,
    const JointTableSet* cached, const ProtocolOptions& options,
    bool add_one_smoothing) {
  if (cached != nullptr) {
    return parameters_from_stats(*cached, structure, add_one_smoothing);
  }
  if (!eps2) {
    throw std::invalid_argument(
        "learn_parameters_distributed: epsilon2 required without cached "
        "statistics");
  }

  const size_t n_attrs = schema.size();
  const double query_eps = *eps2 / static_cast<double>(n_attrs);

  ConditionalTables theta;
  int64_t attr_round = 0;
  for (const auto& node : structure.nodes) {
    const auto& parents = structure.parents(node);
    std::vector<size_t> attrs{schema.index_of(node)};
    for (const auto& p : parents) attrs.push_back(schema.index_of(p));
    std::sort(attrs.begin(), attrs.end());

    FrequencyTable merged;
    merged.attrs = attrs;
    for (size_t a : attrs) merged.dims.push_back(schema.domain_size(a));
    merged.counts.assign(schema.joint_domain_size(attrs), 0.0);

    for (size_t j = 0; j < transport.holder_count(); ++j) {
      ProtocolMessage query;
      query.kind = MessageKind::freq_query;
      query.run_id = options.run_id;
      query.round = attr_round;
      query.attrs = std::vector<std::string>{};
      for (size_t a : attrs) query.attrs->push_back(schema.attribute(a).name);
      query.epsilon = query_eps;
      const ProtocolMessage reply = transport.exchange(j, query);
      if (reply.is_refusal()) {
        throw ProtocolError("holder " + std::to_string(j) +
                            " refused a parameter query");
      }
      for (size_t c = 0; c < merged.counts.size(); ++c) {
        merged.counts[c] += (*reply.counts)[c];
      }
      merged.n_source += static_cast<double>(reply.n_j.value_or(0));
    }
    ++attr_round;

    // Merged counts are nonnegative (holders clamp); smooth if requested.
    // Division by the nominal n cancels in the conditioning.
    if (add_one_smoothing) {
      for (double& c : merged.counts) c += 1.0;
    }
    theta.theta[node] = condition_counts(schema, node, parents, merged);
  }
  return theta;
}

}  // namespace dpa
