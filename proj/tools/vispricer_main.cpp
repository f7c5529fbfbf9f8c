// Copyright 2026 The Vispricer Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vispricer/experiment.hpp"
#include "vispricer/oracle.hpp"
#include "vispricer/pricing.hpp"
#include "vispricer/shapley.hpp"

namespace {

using namespace vispricer;

struct PipelineOptions {
  std::string config_path;
  std::string valuations_path;  // optional CSV override of sampled valuations
  std::string subroutine;
  double epsilon = -1.0;  // < 0: use the config's first epsilon
  bool candidate_prices = false;
  int budget = 0;  // 0: use the config's first budget
};

struct PipelineRun {
  ExperimentConfig cfg;
  std::shared_ptr<const MarketIndex> index;
  SupplierStrategy strategy;
  double epsilon = 0.0;
  PricingSolution solution;
};

// Shared front half of `optimize` and `shapley`: load the configured market
// (or a valuations CSV) and solve one price search.
PipelineRun run_pipeline(const PipelineOptions& opt) {
  PipelineRun run;
  run.cfg = ExperimentConfig::load(opt.config_path);
  const DirectedGraph graph = load_edge_list(run.cfg.graph_path, run.cfg.undirected);
  const int budget = opt.budget > 0 ? opt.budget : run.cfg.budget_list.front();
  MarketInstance inst =
      opt.valuations_path.empty()
          ? sample_market(graph, run.cfg).with_budget(budget)
          : market_from_valuations_csv(graph, opt.valuations_path, run.cfg.tau,
                                       budget, run.cfg.alpha);
  run.index = std::make_shared<const MarketIndex>(std::move(inst));

  run.strategy = opt.subroutine.empty()
                     ? (run.cfg.subroutines.empty() ? SupplierStrategy::kGreedy
                                                    : run.cfg.subroutines.front())
                     : parse_strategy(opt.subroutine);
  if (opt.candidate_prices) {
    run.epsilon = 0.0;
    run.solution = candidate_price_search(*run.index, run.strategy);
  } else {
    run.epsilon = opt.epsilon > 0.0 ? opt.epsilon : run.cfg.epsilon_list.front();
    run.solution = discretized_price_search(*run.index, run.epsilon, run.strategy);
  }
  return run;
}

void add_pipeline_flags(CLI::App* cmd, PipelineOptions& opt) {
  cmd->add_option("--config", opt.config_path, "experiment config JSON")->required();
  cmd->add_option("--subroutine", opt.subroutine,
                  "supplier selection strategy: greedy|brute|topvis");
  cmd->add_option("--budget", opt.budget, "override the config's first budget");
  cmd->add_option("--valuations", opt.valuations_path,
                  "node,role,valuation CSV instead of sampled valuations");
  auto* eps = cmd->add_option("--epsilon", opt.epsilon, "price search step in (0,1]");
  auto* cand = cmd->add_flag("--candidate-prices", opt.candidate_prices,
                             "search the participation-threshold candidate prices");
  eps->excludes(cand);
}

int run_stats(const std::string& path, bool undirected) {
  LoadReport report;
  const DirectedGraph graph = load_edge_list(path, undirected, &report);
  const DatasetStats stats = dataset_stats(graph);
  std::cout << "path: " << path << "\n"
            << "nodes: " << stats.nodes << "\n"
            << "arcs: " << stats.arcs << "\n"
            << "data_lines: " << report.data_lines << "\n"
            << "self_loops_dropped: " << report.self_loops_dropped << "\n"
            << "duplicate_arcs_dropped: " << report.duplicate_arcs_dropped << "\n"
            << "reciprocal_arcs: " << stats.reciprocal_arcs << "\n"
            << "reciprocity: " << stats.reciprocity << "\n"
            << "looks_undirected: " << (stats.looks_undirected ? "true" : "false")
            << "\n";
  return 0;
}

int run_optimize(const PipelineOptions& opt) {
  const PipelineRun run = run_pipeline(opt);
  std::cout << solution_to_json(run.solution, run.index->instance().graph(),
                                run.strategy, run.epsilon)
                   .dump(2)
            << "\n";
  return 0;
}

int run_shapley(const PipelineOptions& opt, bool exact, int rounds, double delta) {
  const PipelineRun run = run_pipeline(opt);
  const std::vector<NodeId> players = run.solution.selection.chosen;
  if (players.empty()) {
    std::cout << "{\n  \"note\": \"no suppliers selected at the solved price\"\n}\n";
    return 0;
  }
  const CoalitionGame game =
      make_improvement_game(run.index, run.solution.price.p, players);
  ShapleyAllocation alloc;
  if (exact) {
    alloc = shapley_exact(game);
  } else {
    const int k = rounds > 0 ? rounds : run.cfg.shapley_rounds;
    const double d = delta > 0.0 ? delta : run.cfg.shapley_delta;
    alloc = shapley_sampled(game, PermutationSampler{run.cfg.seed, k}, d);
  }
  alloc.rewards = reward_allocation(alloc, run.solution.price.q);
  nlohmann::json out = allocation_to_json(alloc, run.index->instance().graph());
  out["price_p"] = run.solution.price.p;
  out["price_q"] = run.solution.price.q;
  std::cout << out.dump(2) << "\n";
  return 0;
}

int run_full_experiment(const std::string& config_path) {
  const ExperimentConfig cfg = ExperimentConfig::load(config_path);
  const ExperimentResult result = run_experiment(cfg);
  std::cout << "runs: " << result.runs.size() << "\n"
            << "shapley_rows: " << result.shapley_rows.size() << "\n"
            << "runs_csv: " << result.runs_csv_path << "\n"
            << "shapley_csv: " << result.shapley_csv_path << "\n"
            << "summary: " << result.summary_json_path << "\n";
  return 0;
}

int run_oracle(const std::string& config_path) {
  const ExperimentConfig cfg = ExperimentConfig::load(config_path);
  const std::vector<OracleCheck> checks = run_oracle_checks(cfg);
  bool all_pass = true;
  for (const OracleCheck& check : checks) {
    std::cout << (check.pass ? "PASS " : "FAIL ") << check.name;
    if (!check.detail.empty()) std::cout << " (" << check.detail << ")";
    std::cout << "\n";
    all_pass = all_pass && check.pass;
  }
  return all_pass ? 0 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"social visibility boosting market: pricing, supplier selection "
               "and Shapley reward division"};
  app.require_subcommand(1);

  std::string stats_path;
  bool stats_undirected = false;
  auto* stats_cmd = app.add_subcommand("stats", "edge list statistics");
  stats_cmd->add_option("edgelist", stats_path, "edge list file")->required();
  stats_cmd->add_flag("--undirected", stats_undirected,
                      "treat each line as an undirected edge");

  PipelineOptions optimize_opt;
  auto* optimize_cmd =
      app.add_subcommand("optimize", "search the posted price and supplier set");
  add_pipeline_flags(optimize_cmd, optimize_opt);

  PipelineOptions shapley_opt;
  bool shapley_exact_flag = false;
  int shapley_rounds = 0;
  double shapley_delta = 0.0;
  auto* shapley_cmd =
      app.add_subcommand("shapley", "divide the reward at the solved price");
  add_pipeline_flags(shapley_cmd, shapley_opt);
  auto* exact_flag =
      shapley_cmd->add_flag("--exact", shapley_exact_flag, "exact enumeration");
  auto* rounds_opt = shapley_cmd->add_option("--rounds", shapley_rounds,
                                             "permutation sampling rounds K");
  auto* delta_opt =
      shapley_cmd->add_option("--delta", shapley_delta, "confidence parameter");
  exact_flag->excludes(rounds_opt);
  exact_flag->excludes(delta_opt);

  std::string experiment_config;
  auto* experiment_cmd =
      app.add_subcommand("experiment", "run the full benchmark protocol");
  experiment_cmd->add_option("--config", experiment_config, "experiment config JSON")
      ->required();

  std::string oracle_config;
  auto* oracle_cmd =
      app.add_subcommand("oracle", "run brute-force cross-checks (exit 2 on failure)");
  oracle_cmd->add_option("--config", oracle_config, "experiment config JSON")
      ->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (stats_cmd->parsed()) return run_stats(stats_path, stats_undirected);
    if (optimize_cmd->parsed()) return run_optimize(optimize_opt);
    if (shapley_cmd->parsed())
      return run_shapley(shapley_opt, shapley_exact_flag, shapley_rounds, shapley_delta);
    if (experiment_cmd->parsed()) return run_full_experiment(experiment_config);
    if (oracle_cmd->parsed()) return run_oracle(oracle_config);
  } catch (const std::exception& err) {
    std::cerr << "error: " << err.what() << "\n";
    return 1;
  }
  return 0;
}
