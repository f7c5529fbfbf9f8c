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

#include "vispricer/pricing.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace vispricer {

namespace {

void check_price(const MarketIndex& index, PricePoint price) {
  if (std::abs(price.q - index.instance().alpha() * price.p) > kPriceTolerance)
    throw std::invalid_argument("price pair violates q = alpha * p");
}

SupplierSelection greedy_naive(const MarketIndex& index, PricePoint price) {
  const MarketInstance& inst = index.instance();
  SupplierSelection sel;
  sel.price = price;
  const std::vector<NodeId> pool = potential_suppliers(inst, price.q);
  const std::vector<NodeId> active = participating_requesters(inst, price.p);
  const double unit = price.p - price.q;

  NodeBitset cover = index.empty_cover();
  std::int64_t current = 0;
  std::vector<char> taken(pool.size(), 0);
  const std::size_t steps = std::min<std::size_t>(pool.size(), inst.budget());
  for (std::size_t t = 0; t < steps; ++t) {
    std::int64_t best_gain = -1;
    std::size_t best_i = pool.size();
    for (std::size_t i = 0; i < pool.size(); ++i) {
      if (taken[i]) continue;
      const std::int64_t with = index.coverage_total_with(cover, pool[i], active);
      const std::int64_t gain = with - current;
      if (gain > best_gain) {  // strict: first maximum wins, i.e. smallest id
        best_gain = gain;
        best_i = i;
      }
    }
    taken[best_i] = 1;
    sel.chosen.push_back(pool[best_i]);
    sel.marginal_gains.push_back(unit * static_cast<double>(best_gain));
    index.add_cover(cover, pool[best_i]);
    current += best_gain;
  }
  sel.final_revenue = unit * static_cast<double>(current);
  return sel;
}

// CELF-style variant: stale gains sit in a max-heap and are refreshed on pop.
// Submodularity guarantees gains only shrink, so a fresh top entry is the
// true arg max. The (gain desc, id asc) heap order replays the naive tie rule.
SupplierSelection greedy_lazy(const MarketIndex& index, PricePoint price) {
  const MarketInstance& inst = index.instance();
  SupplierSelection sel;
  sel.price = price;
  const std::vector<NodeId> pool = potential_suppliers(inst, price.q);
  const std::vector<NodeId> active = participating_requesters(inst, price.p);
  const double unit = price.p - price.q;

  struct Entry {
    std::int64_t gain;
    NodeId id;
    std::size_t stamp;
  };
  const auto worse = [](const Entry& a, const Entry& b) {
    if (a.gain != b.gain) return a.gain < b.gain;
    return a.id > b.id;
  };
  std::priority_queue<Entry, std::vector<Entry>, decltype(worse)> heap(worse);

  NodeBitset cover = index.empty_cover();
  std::int64_t current = 0;
  for (NodeId s : pool)
    heap.push({index.coverage_total_with(cover, s, active), s, 1});

  const std::size_t steps = std::min<std::size_t>(pool.size(), inst.budget());
  for (std::size_t step = 1; step <= steps; ++step) {
    for (;;) {
      Entry top = heap.top();
      heap.pop();
      if (top.stamp == step) {
        sel.chosen.push_back(top.id);
        sel.marginal_gains.push_back(unit * static_cast<double>(top.gain));
        index.add_cover(cover, top.id);
        current += top.gain;
        break;
      }
      top.gain = index.coverage_total_with(cover, top.id, active) - current;
      top.stamp = step;
      heap.push(top);
    }
  }
  sel.final_revenue = unit * static_cast<double>(current);
  return sel;
}

bool lexicographically_less(const std::vector<NodeId>& a, const std::vector<NodeId>& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

SupplierSelection finish_selection(const MarketIndex& index, PricePoint price,
                                   std::vector<NodeId> chosen,
                                   std::span<const NodeId> active) {
  SupplierSelection sel;
  sel.price = price;
  const double unit = price.p - price.q;
  NodeBitset cover = index.empty_cover();
  std::int64_t current = 0;
  for (NodeId s : chosen) {
    const std::int64_t with = index.coverage_total_with(cover, s, active);
    sel.marginal_gains.push_back(unit * static_cast<double>(with - current));
    index.add_cover(cover, s);
    current = with;
  }
  sel.chosen = std::move(chosen);
  sel.final_revenue = unit * static_cast<double>(current);
  return sel;
}

PricingSolution price_sweep(const MarketIndex& index, std::span<const double> prices,
                            SupplierStrategy strategy, std::size_t pool_limit) {
  const double alpha = index.instance().alpha();
  PricingSolution best;
  bool have_incumbent = false;
  for (double p : prices) {
    const PricePoint price = PricePoint::with_alpha(p, alpha);
    SupplierSelection sel = select_suppliers(index, price, strategy, pool_limit);
    const double rev = sel.final_revenue;
    best.search_trace.emplace_back(p, rev);
    if (!have_incumbent || rev >= best.revenue) {  // >=: largest p wins ties
      best.price = price;
      best.selection = std::move(sel);
      best.revenue = rev;
      have_incumbent = true;
    }
  }
  return best;
}

}  // namespace

std::string to_string(SupplierStrategy strategy) {
  switch (strategy) {
    case SupplierStrategy::kGreedy:
      return "greedy";
    case SupplierStrategy::kBrute:
      return "brute";
    case SupplierStrategy::kTopVis:
      return "topvis";
  }
  return "greedy";
}

SupplierStrategy parse_strategy(std::string_view name) {
  if (name == "greedy") return SupplierStrategy::kGreedy;
  if (name == "brute") return SupplierStrategy::kBrute;
  if (name == "topvis") return SupplierStrategy::kTopVis;
  throw std::invalid_argument("unknown supplier strategy '" + std::string(name) +
                              "' (expected greedy, brute or topvis)");
}

SupplierSelection greedy_supplier_set(const MarketIndex& index, PricePoint price,
                                      bool lazy) {
  check_price(index, price);
  return lazy ? greedy_lazy(index, price) : greedy_naive(index, price);
}

SupplierSelection greedy_supplier_set(const MarketInstance& inst, PricePoint price) {
  return greedy_supplier_set(MarketIndex(inst), price);
}

SupplierSelection brute_supplier_set(const MarketIndex& index, PricePoint price,
                                     std::size_t pool_limit) {
  check_price(index, price);
  const MarketInstance& inst = index.instance();
  const std::vector<NodeId> pool = potential_suppliers(inst, price.q);
  if (pool.size() > pool_limit)
    throw std::runtime_error("brute_supplier_set: pool of " +
                             std::to_string(pool.size()) + " suppliers exceeds limit " +
                             std::to_string(pool_limit));
  const std::vector<NodeId> active = participating_requesters(inst, price.p);
  const double unit = price.p - price.q;

  std::vector<NodeId> best_set;  // empty set is feasible with revenue 0
  double best_rev = 0.0;

  const std::size_t max_size = std::min<std::size_t>(pool.size(), inst.budget());
  std::vector<std::size_t> comb;
  std::vector<NodeId> subset;
  // Enumerates all index combinations of each size; tie handling makes the
  // visiting order irrelevant.
  auto consider = [&]() {
    subset.clear();
    for (std::size_t i : comb) subset.push_back(pool[i]);
    NodeBitset cover = index.empty_cover();
    for (NodeId s : subset) index.add_cover(cover, s);
    const double rev = unit * static_cast<double>(index.coverage_total(cover, active));
    if (rev > best_rev || (rev == best_rev && lexicographically_less(subset, best_set))) {
      best_rev = rev;
      best_set = subset;
    }
  };
  for (std::size_t size = 1; size <= max_size; ++size) {
    comb.resize(size);
    for (std::size_t i = 0; i < size; ++i) comb[i] = i;
    for (;;) {
      consider();
      std::size_t i = size;
      while (i > 0 && comb[i - 1] == pool.size() - size + (i - 1)) --i;
      if (i == 0) break;
      ++comb[i - 1];
      for (std::size_t j = i; j < size; ++j) comb[j] = comb[j - 1] + 1;
    }
  }
  return finish_selection(index, price, std::move(best_set), active);
}

SupplierSelection brute_supplier_set(const MarketInstance& inst, PricePoint price,
                                     std::size_t pool_limit) {
  return brute_supplier_set(MarketIndex(inst), price, pool_limit);
}

SupplierSelection topvis_supplier_set(const MarketIndex& index, PricePoint price) {
  check_price(index, price);
  const MarketInstance& inst = index.instance();
  std::vector<NodeId> pool = potential_suppliers(inst, price.q);
  std::stable_sort(pool.begin(), pool.end(), [&](NodeId a, NodeId b) {
    const std::int64_t sa = index.supplier_visibility_score(a);
    const std::int64_t sb = index.supplier_visibility_score(b);
    if (sa != sb) return sa > sb;
    return a < b;
  });
  const std::size_t take = std::min<std::size_t>(pool.size(), inst.budget());
  pool.resize(take);
  const std::vector<NodeId> active = participating_requesters(inst, price.p);
  return finish_selection(index, price, std::move(pool), active);
}

SupplierSelection topvis_supplier_set(const MarketInstance& inst, PricePoint price) {
  return topvis_supplier_set(MarketIndex(inst), price);
}

SupplierSelection select_suppliers(const MarketIndex& index, PricePoint price,
                                   SupplierStrategy strategy, std::size_t pool_limit) {
  switch (strategy) {
    case SupplierStrategy::kGreedy:
      return greedy_supplier_set(index, price);
    case SupplierStrategy::kBrute:
      return brute_supplier_set(index, price, pool_limit);
    case SupplierStrategy::kTopVis:
      return topvis_supplier_set(index, price);
  }
  throw std::invalid_argument("unknown supplier strategy");
}

PriceGrid price_grid(double epsilon) {
  if (!(epsilon > 0.0) || !(epsilon <= 1.0))
    throw std::invalid_argument("price search step must lie in (0, 1]");
  PriceGrid grid;
  grid.step = epsilon;
  std::size_t k = static_cast<std::size_t>(std::floor(1.0 / epsilon));
  while (static_cast<double>(k) * epsilon > 1.0) --k;          // floor guard
  while (static_cast<double>(k + 1) * epsilon <= 1.0) ++k;
  for (std::size_t i = 0; i <= k; ++i)
    grid.points.push_back(static_cast<double>(i) * epsilon);
  if (grid.points.back() != 1.0) grid.points.push_back(1.0);
  return grid;
}

PricingSolution discretized_price_search(const MarketIndex& index, double epsilon,
                                         SupplierStrategy strategy,
                                         std::size_t pool_limit) {
  const PriceGrid grid = price_grid(epsilon);
  return price_sweep(index, grid.points, strategy, pool_limit);
}

PricingSolution discretized_price_search(const MarketInstance& inst, double epsilon,
                                         SupplierStrategy strategy,
                                         std::size_t pool_limit) {
  return discretized_price_search(MarketIndex(inst), epsilon, strategy, pool_limit);
}

PricingSolution candidate_price_search(const MarketIndex& index, SupplierStrategy strategy,
                                       std::size_t pool_limit) {
  const MarketInstance& inst = index.instance();
  std::vector<double> candidates;
  for (double v : inst.requester_valuations()) candidates.push_back(v);
  for (double v : inst.supplier_valuations()) {
    const double p = v / inst.alpha();
    if (p <= 1.0) candidates.push_back(p);
  }
  candidates.push_back(1.0);
  std::sort(candidates.begin(), candidates.end());
  candidates.erase(std::unique(candidates.begin(), candidates.end()), candidates.end());
  return price_sweep(index, candidates, strategy, pool_limit);
}

PricingSolution candidate_price_search(const MarketInstance& inst, SupplierStrategy strategy,
                                       std::size_t pool_limit) {
  return candidate_price_search(MarketIndex(inst), strategy, pool_limit);
}

std::vector<GapRow> lipschitz_gap_report(const MarketIndex& index,
                                         std::span<const double> epsilons,
                                         SupplierStrategy strategy) {
  if (epsilons.empty())
    throw std::invalid_argument("lipschitz_gap_report: empty epsilon list");
  std::vector<GapRow> rows;
  double best = 0.0;
  for (double eps : epsilons) {
    const PricingSolution sol = discretized_price_search(index, eps, strategy);
    rows.push_back({eps, sol.revenue, 0.0});
    best = std::max(best, sol.revenue);
  }
  for (GapRow& row : rows) row.gap = best - row.revenue;
  return rows;
}

nlohmann::json solution_to_json(const PricingSolution& solution,
                                const DirectedGraph& graph, SupplierStrategy strategy,
                                double epsilon) {
  nlohmann::json out;
  out["price_p"] = solution.price.p;
  out["price_q"] = solution.price.q;
  nlohmann::json chosen = nlohmann::json::array();
  for (NodeId s : solution.selection.chosen) chosen.push_back(graph.display_label(s));
  out["chosen_suppliers"] = std::move(chosen);
  out["marginal_gains"] = solution.selection.marginal_gains;
  out["revenue"] = solution.revenue;
  nlohmann::json trace = nlohmann::json::array();
  for (const auto& [p, rev] : solution.search_trace)
    trace.push_back(nlohmann::json::array({p, rev}));
  out["trace"] = std::move(trace);
  out["subroutine"] = to_string(strategy);
  out["epsilon"] = epsilon;
  return out;
}

}  // namespace vispricer
