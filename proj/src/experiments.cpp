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

#include "dpa/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <ostream>
#include <sstream>

#include "dpa/entropy_analysis.hpp"

namespace dpa {
namespace {

std::string fmt(double v) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.17g", v);
  return buffer;
}

std::vector<std::string> split_list(const std::string& value) {
  std::vector<std::string> items;
  std::stringstream ss(value);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t");
  return s.substr(begin, end - begin + 1);
}

struct RunningStats {
  double sum = 0, sum_sq = 0;
  size_t count = 0;
  void add(double v) {
    sum += v;
    sum_sq += v * v;
    ++count;
  }
  double mean() const { return sum / static_cast<double>(count); }
  double stderr_mean() const {
    const double n = static_cast<double>(count);
    const double var = std::max(sum_sq / n - mean() * mean(), 0.0);
    return std::sqrt(var / n);
  }
};

}  // namespace

BayesNet synthetic_bn_fixture() {
  // Chain over six binary attributes and a ternary sink. The symmetric flip
  // probability 0.1526 puts the joint entropy at 5.1196 bits.
  constexpr double kFlip = 0.1526;
  std::vector<Attribute> attributes;
  for (int i = 0; i < 6; ++i) {
    attributes.push_back({"X" + std::to_string(i), {"0", "1"}});
  }
  attributes.push_back({"X6", {"0", "1", "2"}});

  BayesNet net;
  net.schema = AttributeSchema(std::move(attributes));
  for (size_t i = 0; i < 7; ++i) {
    net.structure.nodes.push_back(net.schema.attribute(i).name);
    net.structure.insertion_order.push_back(net.schema.attribute(i).name);
  }
  net.structure.parent_sets["X0"] = {};
  for (int i = 1; i < 7; ++i) {
    net.structure.parent_sets["X" + std::to_string(i)] = {
        "X" + std::to_string(i - 1)};
  }

  ConditionalTable root;
  root.value_dim = 2;
  root.probs = {0.7, 0.3};
  net.parameters.theta["X0"] = root;

  for (int i = 1; i < 6; ++i) {
    ConditionalTable table;
    table.parents = {"X" + std::to_string(i - 1)};
    table.parent_dims = {2};
    table.value_dim = 2;
    table.probs = {1.0 - kFlip, kFlip, kFlip, 1.0 - kFlip};
    net.parameters.theta["X" + std::to_string(i)] = table;
  }

  ConditionalTable sink;
  sink.parents = {"X5"};
  sink.parent_dims = {2};
  sink.value_dim = 3;
  sink.probs = {0.7, 0.2, 0.1, 0.1, 0.2, 0.7};
  net.parameters.theta["X6"] = sink;
  return net;
}

void ExperimentConfig::apply_paper_scale() {
  if (experiment == "bn") {
    n_rows = 40000;
    repetitions = 100;
  } else if (experiment == "stream") {
    stream_length = 100000;
    universe = 100000;
    repetitions = 300;
  } else {
    oracle_trials = 1000000;
  }
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  ExperimentConfig config;
  bool paper_scale = false;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("bad config line '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "experiment") {
      config.experiment = value;
    } else if (key == "epsilons") {
      config.epsilons.clear();
      for (const auto& item : split_list(value)) {
        config.epsilons.push_back(std::stod(item));
      }
    } else if (key == "holders") {
      config.holders.clear();
      for (const auto& item : split_list(value)) {
        config.holders.push_back(std::stoul(item));
      }
    } else if (key == "degrees") {
      config.degrees.clear();
      for (const auto& item : split_list(value)) {
        config.degrees.push_back(std::stoul(item));
      }
    } else if (key == "repetitions") {
      config.repetitions = std::stoul(value);
    } else if (key == "seed") {
      config.seed = std::stoull(value);
    } else if (key == "out") {
      config.out = value;
    } else if (key == "n_rows") {
      config.n_rows = std::stoul(value);
    } else if (key == "stream_length") {
      config.stream_length = std::stoull(value);
    } else if (key == "universe") {
      config.universe = std::stoull(value);
    } else if (key == "kinds") {
      config.kinds = split_list(value);
    } else if (key == "m_values") {
      config.m_values.clear();
      for (const auto& item : split_list(value)) {
        config.m_values.push_back(std::stoull(item));
      }
    } else if (key == "alpha") {
      config.alpha = std::stod(value);
    } else if (key == "distribution") {
      config.distribution = value;
    } else if (key == "noise_scales") {
      config.noise_scales.clear();
      for (const auto& item : split_list(value)) {
        config.noise_scales.push_back(std::stod(item));
      }
    } else if (key == "oracle_holders") {
      config.oracle_holders.clear();
      for (const auto& item : split_list(value)) {
        config.oracle_holders.push_back(std::stoul(item));
      }
    } else if (key == "oracle_n") {
      config.oracle_n = std::stoull(value);
    } else if (key == "oracle_trials") {
      config.oracle_trials = std::stoul(value);
    } else if (key == "paper_scale") {
      paper_scale = value == "1" || value == "true";
    } else {
      throw std::runtime_error("unknown config key '" + key + "'");
    }
  }
  if (paper_scale) config.apply_paper_scale();
  return config;
}

namespace {

// Cross entropy (bits) between the true joint and the joint encoded by a
// learned net over the same schema.
double model_cross_entropy(const ProbabilityTable& truth,
                           const BayesNet& learned) {
  return cross_entropy(truth, exact_joint(learned));
}

BayesNet naive_bayes_model(const Dataset& data) {
  BayesNet net;
  net.schema = data.schema;
  for (size_t i = 0; i < data.schema.size(); ++i) {
    const std::string name = data.schema.attribute(i).name;
    net.structure.nodes.push_back(name);
    net.structure.insertion_order.push_back(name);
    net.structure.parent_sets[name] = {};
  }
  RandomSource unused(0);
  net.parameters = learn_parameters_central(data, net.structure,
                                            ParameterOptions{}, unused);
  return net;
}

std::vector<HolderEndpoint> make_holders(const std::vector<Dataset>& parts,
                                         double budget, size_t degree,
                                         uint64_t seed) {
  std::vector<HolderEndpoint> holders;
  holders.reserve(parts.size());
  for (size_t j = 0; j < parts.size(); ++j) {
    HolderConfig config;
    config.total_budget = budget;
    config.degree = degree;
    config.seed = seed;
    holders.emplace_back(j, parts[j], config);
  }
  return holders;
}

}  // namespace

void run_bn_experiment(const ExperimentConfig& config, std::ostream& out) {
  const BayesNet truth = synthetic_bn_fixture();
  const ProbabilityTable p_true = exact_joint(truth);
  const double h_true = entropy_bits(p_true);

  out << "# seed=" << config.seed << "\n";
  out << "strategy,epsilon,M,k,mean_cross_entropy_bits,stderr_bits\n";

  RandomSource master(config.seed);
  for (size_t m_holders : config.holders) {
    for (size_t k : config.degrees) {
      RunningStats naive_stats, nonprivate_stats;
      std::vector<RunningStats> noisy_ss(config.epsilons.size());
      std::vector<RunningStats> majority(config.epsilons.size());
      std::vector<RunningStats> share(config.epsilons.size());

      for (size_t rep = 0; rep < config.repetitions; ++rep) {
        RandomSource rep_rng = master.split();
        const Dataset data = prior_sample(truth, config.n_rows, rep_rng);
        const std::vector<Dataset> parts =
            partition_round_robin(data, m_holders);

        {
          naive_stats.add(model_cross_entropy(p_true, naive_bayes_model(data)));

          BayesNet central;
          central.schema = data.schema;
          central.structure =
              greedy_structure_learn(data, k, std::nullopt, rep_rng);
          ParameterOptions options;
          options.add_one_smoothing = true;
          central.parameters = learn_parameters_central(
              data, central.structure, options, rep_rng);
          nonprivate_stats.add(model_cross_entropy(p_true, central));
        }

        for (size_t e = 0; e < config.epsilons.size(); ++e) {
          const double eps = config.epsilons[e];
          ProtocolOptions options;
          options.run_id = "bn-" + std::to_string(config.seed) + "-" +
                           std::to_string(rep) + "-" + std::to_string(e);

          {  // sharing the noisy sufficient statistics
            auto holders =
                make_holders(parts, eps, k, rep_rng.split().seed());
            InProcessTransport transport(&holders);
            const NoisySsResult result = learn_structure_noisy_ss(
                transport, data.schema, k, eps, options);
            BayesNet net;
            net.schema = data.schema;
            net.structure = result.structure;
            net.parameters = learn_parameters_distributed(
                transport, data.schema, result.structure, std::nullopt,
                &result.merged, options, /*add_one_smoothing=*/true);
            noisy_ss[e].add(model_cross_entropy(p_true, net));
          }

          {  // noisy majority voting
            auto holders =
                make_holders(parts, eps, k, rep_rng.split().seed());
            InProcessTransport transport(&holders);
            BayesNet net;
            net.schema = data.schema;
            net.structure = learn_structure_majority_vote(
                transport, data.schema, k, eps / 2.0, options);
            net.parameters = learn_parameters_distributed(
                transport, data.schema, net.structure, eps / 2.0, nullptr,
                options, /*add_one_smoothing=*/true);
            majority[e].add(model_cross_entropy(p_true, net));
          }

          {  // sharing the noisy model
            auto holders =
                make_holders(parts, eps, k, rep_rng.split().seed());
            InProcessTransport transport(&holders);
            RandomSource analyst = rep_rng.split();
            const ShareModelResult result = learn_structure_share_model(
                transport, data.schema, k, eps, analyst, options);
            BayesNet net;
            net.schema = data.schema;
            net.structure = result.structure;
            net.parameters = parameters_from_stats(
                result.pooled_stats, result.structure,
                /*add_one_smoothing=*/true);
            share[e].add(model_cross_entropy(p_true, net));
          }
        }
      }

      const std::string grid = "," + std::to_string(m_holders) + "," +
                               std::to_string(k) + ",";
      out << "true-net," << grid << fmt(h_true) << ",0\n";
      out << "naive-bayes," << grid << fmt(naive_stats.mean()) << ","
          << fmt(naive_stats.stderr_mean()) << "\n";
      out << "non-private," << grid << fmt(nonprivate_stats.mean())
          << "," << fmt(nonprivate_stats.stderr_mean()) << "\n";
      for (size_t e = 0; e < config.epsilons.size(); ++e) {
        out << "noisy-ss," << fmt(config.epsilons[e]) << grid
            << fmt(noisy_ss[e].mean()) << ","
            << fmt(noisy_ss[e].stderr_mean()) << "\n";
        out << "majority-vote," << fmt(config.epsilons[e]) << grid
            << fmt(majority[e].mean()) << "," << fmt(majority[e].stderr_mean())
            << "\n";
        out << "share-model," << fmt(config.epsilons[e]) << grid
            << fmt(share[e].mean()) << "," << fmt(share[e].stderr_mean())
            << "\n";
      }
    }
  }
}

void run_stream_experiment(const ExperimentConfig& config, std::ostream& out) {
  StreamSpec spec;
  spec.distribution = config.distribution == "zipf"
                          ? StreamDistribution::zipf
                          : StreamDistribution::uniform;
  spec.length = config.stream_length;
  spec.universe_size = config.universe;
  spec.seed = config.seed;
  const Stream stream = generate_stream(spec);
  const double density = stream_density(stream);

  out << "# seed=" << config.seed << "\n";
  out << "kind,epsilon,m,empirical_mse,theoretical_mse,empirical_pr_error,"
         "alpha\n";

  RandomSource master(config.seed);
  for (const auto& kind_name : config.kinds) {
    const EstimatorKind kind = estimator_kind_from_string(kind_name);
    for (double eps : config.epsilons) {
      for (uint64_t m : config.m_values) {
        RunningStats sq_err;
        size_t exceed = 0;
        for (size_t rep = 0; rep < config.repetitions; ++rep) {
          RandomSource rng = master.split();
          PanPrivateState state =
              make_estimator(kind, eps, m, config.universe, rng.split());
          for (uint64_t id : stream.updates) ingest(state, id);
          RandomSource out_rng = rng.split();
          const double estimate = finalize_density(state, out_rng);
          const double err = estimate - density;
          sq_err.add(err * err);
          if (std::abs(err) >= config.alpha) ++exceed;
        }
        // Conditional MSE around d(S_M) plus the sampling variance of
        // d(S_M) itself (without replacement).
        const double fpc =
            config.universe > 1
                ? static_cast<double>(config.universe - m) /
                      static_cast<double>(config.universe - 1)
                : 0.0;
        const double var_sampling =
            density * (1.0 - density) / static_cast<double>(m) * fpc;
        const double theory =
            theoretical_mse(kind, eps, m, density) + var_sampling;
        out << kind_name << "," << fmt(eps) << "," << m << ","
            << fmt(sq_err.mean()) << "," << fmt(theory) << ","
            << fmt(static_cast<double>(exceed) /
                   static_cast<double>(config.repetitions))
            << "," << fmt(config.alpha) << "\n";
      }
    }
  }
}

void run_entropy_oracle(const ExperimentConfig& config, std::ostream& out) {
  ProbabilityTable p;
  p.attrs = {0};
  p.dims = {4};
  p.probs = {0.4, 0.3, 0.2, 0.1};

  out << "# seed=" << config.seed << "\n";
  out << "n,d,M,b,empirical_bias,theoretical_leading,empirical_mse,"
         "sigma2_over_n\n";

  RandomSource master(config.seed);
  for (size_t M : config.oracle_holders) {
    for (double b : config.noise_scales) {
      RandomSource rng = master.split();
      const EntropyMonteCarlo mc = entropy_estimator_monte_carlo(
          p, config.oracle_n, M, b, config.oracle_trials, rng);
      const double leading =
          (static_cast<double>(p.probs.size()) - 1.0) /
          (2.0 * static_cast<double>(config.oracle_n));
      out << config.oracle_n << "," << p.probs.size() << "," << M << ","
          << fmt(b) << "," << fmt(mc.bias) << "," << fmt(leading) << ","
          << fmt(mc.mse) << ","
          << fmt(entropy_mse_theoretical(
                 p, static_cast<double>(config.oracle_n)))
          << "\n";
    }
  }
}

}  // namespace dpa
