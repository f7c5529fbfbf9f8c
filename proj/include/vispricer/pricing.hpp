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

#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "vispricer/market.hpp"

namespace vispricer {

enum class SupplierStrategy { kGreedy, kBrute, kTopVis };

std::string to_string(SupplierStrategy strategy);
SupplierStrategy parse_strategy(std::string_view name);

/// Subset enumeration guard: brute force refuses pools larger than this
/// unless the caller raises the limit explicitly.
inline constexpr std::size_t kDefaultBrutePoolLimit = 20;

/// A supplier set in selection order with the revenue increment each step
/// contributed. final_revenue is the coverage-form revenue of the whole set.
struct SupplierSelection {
  std::vector<NodeId> chosen;
  std::vector<double> marginal_gains;
  double final_revenue = 0.0;
  PricePoint price;
};

/// The price grid {0, eps, 2 eps, ..., floor(1/eps) eps, 1} with duplicates
/// removed; strictly increasing, first point 0, last point 1.
struct PriceGrid {
  double step = 0.0;
  std::vector<double> points;
};

struct PricingSolution {
  PricePoint price;
  SupplierSelection selection;
  double revenue = 0.0;
  std::vector<std::pair<double, double>> search_trace;  // (p, revenue) ascending in p
};

/// Greedy marginal-revenue selection under the budget. Zero-gain candidates
/// are still added until the budget or the pool runs out; ties go to the
/// smallest node id. `lazy` switches to a stale-gain priority queue that is
/// output-identical to the plain double loop.
SupplierSelection greedy_supplier_set(const MarketIndex& index, PricePoint price,
                                      bool lazy = false);
SupplierSelection greedy_supplier_set(const MarketInstance& inst, PricePoint price);

/// Exhaustive search over all supplier subsets of size <= budget. Revenue
/// ties resolve to the lexicographically smallest id set. Throws when the
/// pool exceeds pool_limit.
SupplierSelection brute_supplier_set(const MarketIndex& index, PricePoint price,
                                     std::size_t pool_limit = kDefaultBrutePoolLimit);
SupplierSelection brute_supplier_set(const MarketInstance& inst, PricePoint price,
                                     std::size_t pool_limit = kDefaultBrutePoolLimit);

/// Takes the budget-many pool suppliers with the highest visibility score
/// (ties to the smaller id).
SupplierSelection topvis_supplier_set(const MarketIndex& index, PricePoint price);
SupplierSelection topvis_supplier_set(const MarketInstance& inst, PricePoint price);

SupplierSelection select_suppliers(const MarketIndex& index, PricePoint price,
                                   SupplierStrategy strategy,
                                   std::size_t pool_limit = kDefaultBrutePoolLimit);

PriceGrid price_grid(double epsilon);

/// Evaluates every grid point ascending with q = alpha * p and keeps the
/// incumbent on >=, so revenue ties resolve to the largest p.
PricingSolution discretized_price_search(const MarketIndex& index, double epsilon,
                                         SupplierStrategy strategy,
                                         std::size_t pool_limit = kDefaultBrutePoolLimit);
PricingSolution discretized_price_search(const MarketInstance& inst, double epsilon,
                                         SupplierStrategy strategy,
                                         std::size_t pool_limit = kDefaultBrutePoolLimit);

/// Evaluates the finite candidate set {p_u} ∪ {q_u/alpha <= 1} ∪ {1}, which
/// contains an optimal posted price because participation sets only change
/// at those thresholds and revenue grows linearly in p between them.
PricingSolution candidate_price_search(const MarketIndex& index, SupplierStrategy strategy,
                                       std::size_t pool_limit = kDefaultBrutePoolLimit);
PricingSolution candidate_price_search(const MarketInstance& inst, SupplierStrategy strategy,
                                       std::size_t pool_limit = kDefaultBrutePoolLimit);

struct GapRow {
  double epsilon = 0.0;
  double revenue = 0.0;
  double gap = 0.0;  // best revenue across the swept steps minus this one
};

/// Runs the discretized search for every step in `epsilons` and reports the
/// empirical revenue gap to the best step in the list.
std::vector<GapRow> lipschitz_gap_report(const MarketIndex& index,
                                         std::span<const double> epsilons,
                                         SupplierStrategy strategy);

/// {price_p, price_q, chosen_suppliers, marginal_gains, revenue, trace,
/// subroutine, epsilon}; epsilon 0 denotes candidate price search.
nlohmann::json solution_to_json(const PricingSolution& solution,
                                const DirectedGraph& graph, SupplierStrategy strategy,
                                double epsilon);

}  // namespace vispricer
