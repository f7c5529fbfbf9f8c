# Copyright 2026 The Vispricer Authors.
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Bounded-hop social visibility market.

Graph reachability queries, posted-price revenue optimization with a greedy
(1 - 1/e) supplier selection, discretized and candidate price search, and
Shapley-value reward division (exact and permutation-sampled).
"""

from ._vispricer import (  # noqa: F401
    CoalitionGame,
    DatasetStats,
    DirectedGraph,
    ExperimentConfig,
    ImprovementMethod,
    ImprovementReport,
    LoadReport,
    MarketIndex,
    MarketInstance,
    PermutationSampler,
    PriceGrid,
    PricePoint,
    PricingSolution,
    ShapleyAllocation,
    ShapleyMethod,
    SupplierSelection,
    SupplierStrategy,
    VisibleSet,
    bounded_distance,
    brute_supplier_set,
    candidate_price_search,
    dataset_stats,
    discretized_price_search,
    greedy_supplier_set,
    hoeffding_bound,
    improvement_closed_form,
    improvement_exact,
    leveled_visible_sets,
    lipschitz_gap_report,
    load_edge_list,
    make_improvement_game,
    make_path_graph,
    make_random_digraph,
    make_star_graph,
    make_two_community_graph,
    make_uniform_market,
    market_from_valuations_csv,
    participating_requesters,
    payments,
    potential_suppliers,
    price_grid,
    reward_allocation,
    revenue,
    run_experiment,
    run_oracle_checks,
    sample_market,
    shapley_exact,
    shapley_sampled,
    solution_to_json,
    standalone_check,
    supplier_rationality,
    topvis_supplier_set,
    visibility_score,
    visible_set,
)

__version__ = "0.1.0"
