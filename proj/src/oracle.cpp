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

#include "vispricer/oracle.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "vispricer/random.hpp"
#include "vispricer/synthetic.hpp"

namespace vispricer {

namespace {

constexpr double kGreedyFactor = 1.0 - 1.0 / std::numbers::e;

MarketInstance random_small_market(Rng& rng, int max_suppliers, int tau) {
  const int n = 6 + static_cast<int>(rng.next_below(14));
  const DirectedGraph g = make_random_digraph(n, 0.18, rng.next_u64());
  const int nr = 1 + static_cast<int>(rng.next_below(4));
  const int ns = 1 + static_cast<int>(rng.next_below(
                         static_cast<std::uint64_t>(std::min(max_suppliers, n - nr - 1))));
  const int budget = 1 + static_cast<int>(rng.next_below(3));
  return make_uniform_market(g, nr, ns, tau, budget, 0.6, rng.next_u64());
}

OracleCheck improvement_routes_agree(std::uint64_t seed) {
  Rng rng(seed);
  for (int trial = 0; trial < 60; ++trial) {
    const int tau = 1 + static_cast<int>(rng.next_below(3));
    const MarketInstance inst = random_small_market(rng, 5, tau);
    const MarketIndex index(inst);
    const double p = rng.next_unit();
    std::vector<NodeId> chosen;
    for (NodeId s : inst.suppliers())
      if (rng.next_unit() < 0.6) chosen.push_back(s);
    const std::int64_t exact = improvement_exact(inst, p, chosen).total;
    const std::int64_t closed = improvement_closed_form(inst, p, chosen).total;
    const std::int64_t coverage = index.improvement(p, chosen);
    if (closed != coverage)
      return {"improvement_routes_agree", false,
              "closed-form and coverage evaluator disagree at trial " +
                  std::to_string(trial)};
    if (closed > exact)
      return {"improvement_routes_agree", false,
              "closed form exceeded BFS improvement at trial " + std::to_string(trial)};
    if (tau <= 2 && closed != exact)
      return {"improvement_routes_agree", false,
              "closed form missed BFS improvement at tau<=2, trial " +
                  std::to_string(trial)};
  }
  return {"improvement_routes_agree", true, "60 randomized instances"};
}

OracleCheck greedy_ratio(std::uint64_t seed) {
  Rng rng(seed);
  for (int trial = 0; trial < 60; ++trial) {
    const MarketInstance inst = random_small_market(rng, 7, 2);
    const MarketIndex index(inst);
    const PricePoint price = PricePoint::with_alpha(rng.next_unit(), inst.alpha());
    const SupplierSelection greedy = greedy_supplier_set(index, price);
    const SupplierSelection brute = brute_supplier_set(index, price);
    if (greedy.final_revenue < kGreedyFactor * brute.final_revenue - 1e-12)
      return {"greedy_ratio", false,
              "ratio violated at trial " + std::to_string(trial)};
    if (inst.budget() == 1 &&
        std::abs(greedy.final_revenue - brute.final_revenue) > 1e-12)
      return {"greedy_ratio", false,
              "budget-1 optimality violated at trial " + std::to_string(trial)};
  }
  return {"greedy_ratio", true, "greedy >= (1-1/e) * brute on 60 instances"};
}

OracleCheck candidate_price_optimality(std::uint64_t seed) {
  Rng rng(seed);
  for (int trial = 0; trial < 15; ++trial) {
    const int n = 6 + static_cast<int>(rng.next_below(6));
    const DirectedGraph g = make_random_digraph(n, 0.25, rng.next_u64());
    // Valuations on the 1e-3 grid with alpha = 0.5 keep every participation
    // threshold on the dense oracle grid, making the sweep an exact oracle.
    std::vector<NodeId> requesters{0, 1};
    std::vector<NodeId> suppliers{2, 3};
    std::vector<double> pv, qv;
    for (std::size_t i = 0; i < 2; ++i)
      pv.push_back(static_cast<double>(rng.next_below(1001)) * 1e-3);
    for (std::size_t i = 0; i < 2; ++i)
      qv.push_back(static_cast<double>(rng.next_below(1001)) * 1e-3);
    const MarketInstance inst(g, requesters, pv, suppliers, qv, 2, 2, 0.5);
    const MarketIndex index(inst);
    const PricingSolution cand =
        candidate_price_search(index, SupplierStrategy::kBrute);
    const PricingSolution dense =
        discretized_price_search(index, 1e-3, SupplierStrategy::kBrute);
    const double tol = 1e-9 * std::max(1.0, std::abs(dense.revenue));
    if (std::abs(cand.revenue - dense.revenue) > tol)
      return {"candidate_price_optimality", false,
              "candidate search missed dense-grid optimum at trial " +
                  std::to_string(trial)};
  }
  return {"candidate_price_optimality", true, "matches dense grid on 15 instances"};
}

OracleCheck grid_refinement_dominance(std::uint64_t seed) {
  Rng rng(seed);
  for (int trial = 0; trial < 15; ++trial) {
    const MarketInstance inst = random_small_market(rng, 6, 2);
    const MarketIndex index(inst);
    const double coarse =
        discretized_price_search(index, 0.2, SupplierStrategy::kBrute).revenue;
    const double fine =
        discretized_price_search(index, 0.1, SupplierStrategy::kBrute).revenue;
    if (fine < coarse - 1e-12)
      return {"grid_refinement_dominance", false,
              "refining 0.2 -> 0.1 lost revenue at trial " + std::to_string(trial)};
  }
  return {"grid_refinement_dominance", true, "nested grids on 15 instances"};
}

OracleCheck shapley_axioms(std::uint64_t seed) {
  Rng rng(seed);
  for (int trial = 0; trial < 20; ++trial) {
    const MarketInstance inst = random_small_market(rng, 5, 2);
    const auto index = std::make_shared<const MarketIndex>(inst);
    const double p = rng.next_unit();
    const std::vector<NodeId> players(inst.suppliers().begin(), inst.suppliers().end());
    const CoalitionGame game = make_improvement_game(index, p, players);
    const ShapleyAllocation alloc = shapley_exact(game);
    double sum = 0.0;
    for (const auto& [player, share] : alloc.shares) {
      sum += share;
      if (share < -1e-9)
        return {"shapley_axioms", false, "negative share at trial " + std::to_string(trial)};
    }
    if (std::abs(sum - static_cast<double>(alloc.total_value)) > 1e-9)
      return {"shapley_axioms", false, "efficiency violated at trial " + std::to_string(trial)};
    if (!standalone_check(game, alloc))
      return {"shapley_axioms", false, "stand-alone bound violated at trial " +
                                           std::to_string(trial)};
  }
  return {"shapley_axioms", true, "efficiency + stand-alone on 20 games"};
}

OracleCheck configured_pipeline(const ExperimentConfig& cfg) {
  const DirectedGraph graph = load_edge_list(cfg.graph_path, cfg.undirected);
  const MarketInstance inst = sample_market(graph, cfg);
  const MarketIndex index(inst);
  const double eps = cfg.epsilon_list.front();
  const PricingSolution greedy =
      discretized_price_search(index, eps, SupplierStrategy::kGreedy);
  std::ostringstream detail;
  detail << "dataset " << dataset_stats(graph).nodes << " nodes, greedy revenue "
         << greedy.revenue;
  const std::vector<NodeId> pool = potential_suppliers(inst, inst.alpha());
  if (inst.suppliers().size() <= kDefaultBrutePoolLimit) {
    const PricingSolution brute =
        discretized_price_search(index, eps, SupplierStrategy::kBrute);
    if (brute.revenue < greedy.revenue - 1e-12)
      return {"configured_pipeline", false, "brute fell below greedy on the dataset"};
    if (greedy.revenue < kGreedyFactor * brute.revenue - 1e-12)
      return {"configured_pipeline", false, "greedy ratio violated on the dataset"};
    detail << ", brute revenue " << brute.revenue;
  }
  return {"configured_pipeline", true, detail.str()};
}

}  // namespace

std::vector<OracleCheck> run_oracle_checks(const ExperimentConfig& cfg) {
  std::vector<OracleCheck> checks;
  checks.push_back(improvement_routes_agree(cfg.seed));
  checks.push_back(greedy_ratio(cfg.seed + 1));
  checks.push_back(candidate_price_optimality(cfg.seed + 2));
  checks.push_back(grid_refinement_dominance(cfg.seed + 3));
  checks.push_back(shapley_axioms(cfg.seed + 4));
  checks.push_back(configured_pipeline(cfg));
  return checks;
}

}  // namespace vispricer
