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

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "vispricer/market.hpp"
#include "vispricer/pricing.hpp"
#include "vispricer/shapley.hpp"

namespace vispricer {

struct BetaShape {
  double shape_a = 1.0;
  double shape_b = 1.0;
};

/// Full experiment description, normally read from a JSON file whose keys
/// match the field names below (requester_beta/supplier_beta as [a, b]
/// arrays). The `subroutines` list holds the grid-search selection
/// strategies (greedy, brute, topvis); a `candidate-` prefix (for example
/// "candidate-brute") additionally requests the candidate price search with
/// that strategy, recorded with epsilon 0.
struct ExperimentConfig {
  std::string graph_path;
  bool undirected = false;
  int tau = 2;
  double alpha = 0.6;
  std::vector<int> budget_list{1};
  std::vector<double> epsilon_list{0.1};
  double gamma = 0.05;
  BetaShape requester_beta{3.0, 6.0};
  BetaShape supplier_beta{6.0, 3.0};
  std::uint64_t seed = 1;
  std::vector<SupplierStrategy> subroutines{SupplierStrategy::kGreedy};
  std::vector<SupplierStrategy> candidate_subroutines;  // parsed from candidate-* tags
  int shapley_rounds = 200;
  double shapley_delta = 0.1;
  std::string output_dir = "out";

  static ExperimentConfig from_json(const nlohmann::json& doc);
  /// Reads the file and applies the VISPRICER_SEED environment override.
  static ExperimentConfig load(const std::string& path);
  nlohmann::json to_json() const;
  void validate() const;
};

/// One solver run: the winning price, revenue, total improvement and chosen
/// suppliers. epsilon 0 marks a candidate price search row. Rows whose cell
/// failed carry NaN prices/revenue and a single "error: ..." entry in
/// chosen_suppliers.
struct RunRecord {
  std::string dataset;
  SupplierStrategy subroutine = SupplierStrategy::kGreedy;
  double epsilon = 0.0;
  int budget = 0;
  double price_p = 0.0;
  double price_q = 0.0;
  double revenue = 0.0;
  std::int64_t improvement = 0;
  std::int64_t wall_time_ms = 0;
  std::vector<std::string> chosen_suppliers;
};

/// One supplier's share of one run's reward division.
struct ShapleyRecord {
  std::string dataset;
  SupplierStrategy subroutine = SupplierStrategy::kGreedy;
  double epsilon = 0.0;
  int budget = 0;
  ShapleyMethod method = ShapleyMethod::kExact;
  int rounds = 0;
  double delta = 0.0;
  double error_bound = 0.0;
  std::int64_t total_improvement = 0;
  std::string supplier;
  double share = 0.0;
  double reward = 0.0;
};

struct DatasetStats {
  std::size_t nodes = 0;
  std::size_t arcs = 0;
  std::size_t reciprocal_arcs = 0;
  double reciprocity = 0.0;
  bool looks_undirected = false;
};

DatasetStats dataset_stats(const DirectedGraph& g);

/// Draws floor(gamma*n) requesters, then as many suppliers from the remaining
/// users, from a single stream seeded by cfg.seed; then Beta-distributed
/// valuations, requesters first, each role in ascending node-id order. The
/// returned instance uses the first budget in cfg.budget_list.
MarketInstance sample_market(const DirectedGraph& g, const ExperimentConfig& cfg);

struct ExperimentResult {
  std::vector<RunRecord> runs;
  std::vector<ShapleyRecord> shapley_rows;
  std::string runs_csv_path;
  std::string shapley_csv_path;
  std::string summary_json_path;
};

/// Full protocol: one sampled market per seed shared across budgets, a price
/// search per (budget x subroutine x epsilon) cell plus requested candidate
/// searches, Shapley division (exact when small enough, and sampled) at each
/// winning price, and CSV/JSON emission into cfg.output_dir.
ExperimentResult run_experiment(const ExperimentConfig& cfg);

/// One CSV per (dataset, budget) with columns
/// epsilon,subroutine,revenue,wall_time_ms, rows sorted for plotting.
std::vector<std::string> emit_plot_data(std::span<const RunRecord> records,
                                        const std::string& output_dir);

/// CSV bodies (header included); used both for emission and byte-level
/// determinism checks.
std::string runs_csv(std::span<const RunRecord> records);
std::string shapley_csv(std::span<const ShapleyRecord> records);

}  // namespace vispricer
