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

#include <fstream>
#include <iostream>

#include "CLI11.hpp"
#include "dpa/experiments.hpp"

namespace {

using namespace dpa;

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  return out;
}

int run_bn_learn(const std::string& strategy, double epsilon, size_t degree,
                 size_t m_holders, const std::string& data_path,
                 const std::string& schema_path, uint64_t seed,
                 const std::string& out_path) {
  const Dataset data = read_dataset(data_path, ',', schema_path);
  const std::vector<Dataset> parts = partition_round_robin(data, m_holders);

  std::vector<HolderEndpoint> holders;
  for (size_t j = 0; j < parts.size(); ++j) {
    HolderConfig config;
    config.total_budget = epsilon;
    config.degree = degree;
    config.seed = seed;
    holders.emplace_back(j, parts[j], config);
  }
  InProcessTransport transport(&holders);
  ProtocolOptions options;
  options.run_id = "bn-learn-" + std::to_string(seed);

  RandomSource rng(seed);
  BayesNet net;
  net.schema = data.schema;
  if (strategy == "noisy-ss") {
    const NoisySsResult result =
        learn_structure_noisy_ss(transport, data.schema, degree, epsilon,
                                 options);
    net.structure = result.structure;
    net.parameters = learn_parameters_distributed(
        transport, data.schema, result.structure, std::nullopt,
        &result.merged, options, /*add_one_smoothing=*/true);
  } else if (strategy == "majority-vote") {
    net.structure = learn_structure_majority_vote(
        transport, data.schema, degree, epsilon / 2.0, options);
    net.parameters = learn_parameters_distributed(
        transport, data.schema, net.structure, epsilon / 2.0, nullptr,
        options, /*add_one_smoothing=*/true);
  } else if (strategy == "share-model") {
    RandomSource analyst = rng.split();
    const ShareModelResult result = learn_structure_share_model(
        transport, data.schema, degree, epsilon, analyst, options);
    net.structure = result.structure;
    net.parameters = parameters_from_stats(result.pooled_stats,
                                           net.structure,
                                           /*add_one_smoothing=*/true);
  } else {
    std::cerr << "unknown strategy '" << strategy << "'\n";
    return 1;
  }

  write_model(net, out_path);
  double spent_min = holders.front().spent();
  double spent_max = spent_min;
  for (const auto& holder : holders) {
    spent_min = std::min(spent_min, holder.spent());
    spent_max = std::max(spent_max, holder.spent());
  }
  std::cout << "strategy=" << strategy << " holders=" << m_holders
            << " epsilon=" << epsilon << " spent=[" << spent_min << ","
            << spent_max << "] model=" << out_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Differentially private analytics toolkit"};
  app.require_subcommand(1);

  // bn-learn
  std::string strategy = "noisy-ss", data_path, schema_path, model_out;
  double epsilon = 1.0;
  size_t degree = 1, m_holders = 3;
  uint64_t seed = 1;
  auto* bn_learn = app.add_subcommand(
      "bn-learn", "Learn a Bayesian network from partitioned data");
  bn_learn->add_option("--strategy", strategy,
                       "noisy-ss | majority-vote | share-model");
  bn_learn->add_option("--epsilon", epsilon, "Total privacy budget per holder")
      ->required();
  bn_learn->add_option("--degree", degree, "Network degree k");
  bn_learn->add_option("--holders", m_holders, "Number of data holders");
  bn_learn->add_option("--data", data_path, "CSV dataset")->required();
  bn_learn->add_option("--schema", schema_path, "Schema sidecar file");
  bn_learn->add_option("--seed", seed, "Master seed");
  bn_learn->add_option("--out", model_out, "Model output path")->required();

  // experiments
  std::string config_path, out_path;
  bool paper_scale = false;
  auto add_experiment = [&](const char* name, const char* help) {
    auto* cmd = app.add_subcommand(name, help);
    cmd->add_option("--config", config_path, "Key-value config file");
    cmd->add_option("--out", out_path, "CSV output path (default stdout)");
    cmd->add_option("--seed", seed, "Master seed override");
    cmd->add_flag("--paper-scale", paper_scale,
                  "Use the full-scale experiment parameters");
    return cmd;
  };
  auto* bn_experiment =
      add_experiment("bn-experiment", "Cross-entropy comparison of the "
                                      "three learning strategies");
  auto* stream_experiment =
      add_experiment("stream-experiment",
                     "MSE and error-probability of the density estimators");
  auto* entropy_oracle = add_experiment(
      "entropy-oracle", "Monte Carlo check of the entropy estimator theory");

  // stream-estimate
  std::string kind_name = "opt-bernoulli", stream_path;
  double alpha = 0.05, beta = 0.05;
  uint64_t m_opt = 0, universe = 100000;
  bool clip = false;
  auto* stream_estimate = app.add_subcommand(
      "stream-estimate", "Pan-private density estimate over a stream file");
  stream_estimate->add_option("--kind", kind_name,
                              "dwork | opt-bernoulli | laplace | quantized");
  stream_estimate->add_option("--epsilon", epsilon, "Privacy budget")
      ->required();
  stream_estimate->add_option("--alpha", alpha, "Additive accuracy target");
  stream_estimate->add_option("--beta", beta, "Error probability target");
  stream_estimate->add_option("--m", m_opt,
                              "Sample size (optimized when omitted)");
  stream_estimate->add_option("--universe", universe, "Universe size");
  stream_estimate->add_option("--stream", stream_path, "Stream file")
      ->required();
  stream_estimate->add_option("--seed", seed, "Master seed");
  stream_estimate->add_flag("--clip", clip,
                            "Also print the [0,1]-clipped estimate");

  // sample-size
  auto* sample_size = app.add_subcommand(
      "sample-size", "Optimal sample size for the accuracy target");
  sample_size->add_option("--epsilon", epsilon, "Privacy budget")->required();
  sample_size->add_option("--alpha", alpha, "Additive accuracy target")
      ->required();
  sample_size->add_option("--beta", beta, "Error probability target")
      ->required();
  sample_size->add_option("--kind", kind_name,
                          "dwork | opt-bernoulli | laplace | quantized");

  CLI11_PARSE(app, argc, argv);

  try {
    if (bn_learn->parsed()) {
      return run_bn_learn(strategy, epsilon, degree, m_holders, data_path,
                          schema_path, seed, model_out);
    }

    if (bn_experiment->parsed() || stream_experiment->parsed() ||
        entropy_oracle->parsed()) {
      ExperimentConfig config;
      if (!config_path.empty()) config = ExperimentConfig::load(config_path);
      if (bn_experiment->parsed()) config.experiment = "bn";
      if (stream_experiment->parsed()) config.experiment = "stream";
      if (entropy_oracle->parsed()) config.experiment = "entropy-oracle";
      if (seed != 1) config.seed = seed;
      if (paper_scale) config.apply_paper_scale();
      if (!out_path.empty()) config.out = out_path;

      std::ofstream file;
      std::ostream* out = &std::cout;
      if (!config.out.empty()) {
        file = open_out(config.out);
        out = &file;
      }
      if (config.experiment == "bn") {
        run_bn_experiment(config, *out);
      } else if (config.experiment == "stream") {
        run_stream_experiment(config, *out);
      } else if (config.experiment == "entropy-oracle") {
        run_entropy_oracle(config, *out);
      } else {
        std::cerr << "unknown experiment '" << config.experiment << "'\n";
        return 1;
      }
      return 0;
    }

    if (stream_estimate->parsed()) {
      const EstimatorKind kind = estimator_kind_from_string(kind_name);
      const Stream stream = read_stream(stream_path, universe);
      uint64_t m = m_opt;
      if (m == 0) {
        const SampleSizeSolution solution =
            optimize_sample_size(epsilon, alpha, beta, kind);
        m = solution.m_star;
        std::cout << "m*=" << m << " deltas=" << solution.deltas[0] << ","
                  << solution.deltas[1] << "," << solution.deltas[2] << ","
                  << solution.deltas[3] << "\n";
      }
      RandomSource rng(seed);
      PanPrivateState state =
          make_estimator(kind, epsilon, m, universe, rng.split());
      for (size_t t = 0; t < stream.updates.size(); ++t) {
        ingest(state, stream.updates[t],
               stream.has_deletes() && stream.deletes[t]);
      }
      RandomSource out_rng = rng.split();
      const double estimate = finalize_density(state, out_rng);
      std::cout << "density_estimate=" << estimate << "\n";
      if (clip) std::cout << "clipped=" << clip_density(estimate) << "\n";
      return 0;
    }

    if (sample_size->parsed()) {
      const EstimatorKind kind = estimator_kind_from_string(kind_name);
      const SampleSizeSolution solution =
          optimize_sample_size(epsilon, alpha, beta, kind);
      std::cout << "m*=" << solution.m_star << "\n";
      std::cout << "deltas=" << solution.deltas[0] << ","
                << solution.deltas[1] << "," << solution.deltas[2] << ","
                << solution.deltas[3] << "\n";
      std::cout << "m1=" << solution.m1 << " m2=" << solution.m2
                << " m3=" << solution.m3 << "\n";
      return 0;
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
