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

#include "vispricer/market.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace vispricer {

namespace {

void sort_role(std::vector<NodeId>& ids, std::vector<double>& vals,
               const char* role) {
  if (ids.size() != vals.size())
    throw std::invalid_argument(std::string(role) + ": id/valuation size mismatch");
  std::vector<std::size_t> perm(ids.size());
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::sort(perm.begin(), perm.end(),
            [&](std::size_t a, std::size_t b) { return ids[a] < ids[b]; });
  std::vector<NodeId> sorted_ids(ids.size());
  std::vector<double> sorted_vals(ids.size());
  for (std::size_t i = 0; i < perm.size(); ++i) {
    sorted_ids[i] = ids[perm[i]];
    sorted_vals[i] = vals[perm[i]];
  }
  for (std::size_t i = 1; i < sorted_ids.size(); ++i)
    if (sorted_ids[i] == sorted_ids[i - 1])
      throw std::invalid_argument(std::string(role) + ": duplicate node id " +
                                  std::to_string(sorted_ids[i]));
  ids = std::move(sorted_ids);
  vals = std::move(sorted_vals);
}

void check_price(const MarketInstance& inst, PricePoint price) {
  if (std::abs(price.q - inst.alpha() * price.p) > kPriceTolerance)
    throw std::invalid_argument("price pair violates q = alpha * p");
}

void check_chosen(const MarketInstance& inst, std::span<const NodeId> chosen) {
  for (NodeId s : chosen)
    if (!inst.is_supplier(s))
      throw std::invalid_argument("chosen set contains non-supplier id " +
                                  std::to_string(s));
}

std::size_t position_in(std::span<const NodeId> sorted, NodeId id) {
  const auto it = std::lower_bound(sorted.begin(), sorted.end(), id);
  if (it == sorted.end() || *it != id) return sorted.size();
  return static_cast<std::size_t>(it - sorted.begin());
}

}  // namespace

MarketInstance::MarketInstance(DirectedGraph graph, std::vector<NodeId> requesters,
                               std::vector<double> requester_valuations,
                               std::vector<NodeId> suppliers,
                               std::vector<double> supplier_valuations, int tau,
                               int budget, double alpha)
    : graph_(std::move(graph)),
      requesters_(std::move(requesters)),
      requester_vals_(std::move(requester_valuations)),
      suppliers_(std::move(suppliers)),
      supplier_vals_(std::move(supplier_valuations)),
      tau_(tau),
      budget_(budget),
      alpha_(alpha) {
  if (tau_ < 1) throw std::invalid_argument("tau must be >= 1");
  if (budget_ < 1) throw std::invalid_argument("budget must be >= 1");
  if (!(alpha_ > 0.0) || !(alpha_ < 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1)");
  sort_role(requesters_, requester_vals_, "requesters");
  sort_role(suppliers_, supplier_vals_, "suppliers");
  for (NodeId u : requesters_) graph_.check_node(u);
  for (NodeId u : suppliers_) graph_.check_node(u);
  for (double v : requester_vals_)
    if (!(v >= 0.0) || !(v <= 1.0))
      throw std::invalid_argument("requester valuation outside [0, 1]");
  for (double v : supplier_vals_)
    if (!(v >= 0.0) || !(v <= 1.0))
      throw std::invalid_argument("supplier valuation outside [0, 1]");
  std::vector<NodeId> overlap;
  std::set_intersection(requesters_.begin(), requesters_.end(), suppliers_.begin(),
                        suppliers_.end(), std::back_inserter(overlap));
  if (!overlap.empty())
    throw std::invalid_argument("a user cannot be both requester and supplier (id " +
                                std::to_string(overlap.front()) + ")");
}

bool MarketInstance::is_requester(NodeId u) const {
  return position_in(requesters_, u) < requesters_.size();
}

bool MarketInstance::is_supplier(NodeId u) const {
  return position_in(suppliers_, u) < suppliers_.size();
}

double MarketInstance::requester_valuation(NodeId u) const {
  const std::size_t pos = position_in(requesters_, u);
  if (pos == requesters_.size())
    throw std::invalid_argument("node " + std::to_string(u) + " is not a requester");
  return requester_vals_[pos];
}

double MarketInstance::supplier_valuation(NodeId u) const {
  const std::size_t pos = position_in(suppliers_, u);
  if (pos == suppliers_.size())
    throw std::invalid_argument("node " + std::to_string(u) + " is not a supplier");
  return supplier_vals_[pos];
}

MarketInstance MarketInstance::with_budget(int budget) const {
  MarketInstance copy = *this;
  if (budget < 1) throw std::invalid_argument("budget must be >= 1");
  copy.budget_ = budget;
  return copy;
}

std::string to_string(ImprovementMethod method) {
  return method == ImprovementMethod::kExactBfs ? "exact_bfs" : "closed_form";
}

std::vector<NodeId> participating_requesters(const MarketInstance& inst, double p) {
  std::vector<NodeId> active;
  const auto ids = inst.requesters();
  const auto vals = inst.requester_valuations();
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (vals[i] >= p) active.push_back(ids[i]);
  return active;
}

std::vector<NodeId> potential_suppliers(const MarketInstance& inst, double q) {
  std::vector<NodeId> pool;
  const auto ids = inst.suppliers();
  const auto vals = inst.supplier_valuations();
  for (std::size_t i = 0; i < ids.size(); ++i)
    if (vals[i] <= q) pool.push_back(ids[i]);
  return pool;
}

ParticipationProfile participation_profile(const MarketInstance& inst, PricePoint price) {
  check_price(inst, price);
  return {price, participating_requesters(inst, price.p),
          potential_suppliers(inst, price.q)};
}

OverlayGraph augmented_graph(const MarketInstance& inst, double p,
                             std::span<const NodeId> chosen) {
  check_chosen(inst, chosen);
  const std::vector<NodeId> active = participating_requesters(inst, p);
  std::vector<Edge> extra;
  extra.reserve(chosen.size() * active.size());
  for (NodeId s : chosen)
    for (NodeId r : active) extra.emplace_back(s, r);
  return OverlayGraph(inst.graph(), extra);
}

ImprovementReport improvement_exact(const MarketInstance& inst, double p,
                                    std::span<const NodeId> chosen) {
  check_chosen(inst, chosen);
  ImprovementReport report;
  report.method = ImprovementMethod::kExactBfs;
  const std::vector<NodeId> active = participating_requesters(inst, p);
  const OverlayGraph overlay = augmented_graph(inst, p, chosen);
  const DirectedGraph& base = inst.graph();
  std::vector<char> in_base(base.node_count(), 0);
  for (NodeId r : active) {
    const ReachTree base_reach = bounded_reach(base, r, inst.tau(), Direction::kReverse);
    for (NodeId v : base_reach.order) in_base[static_cast<std::size_t>(v)] = 1;
    const ReachTree over_reach = bounded_reach(overlay, r, inst.tau(), Direction::kReverse);
    std::int64_t gained = 0;
    for (NodeId v : over_reach.order)
      if (!in_base[static_cast<std::size_t>(v)]) ++gained;
    for (NodeId v : base_reach.order) in_base[static_cast<std::size_t>(v)] = 0;
    report.per_requester[r] = gained;
    report.total += gained;
  }
  return report;
}

ImprovementReport improvement_closed_form(const MarketInstance& inst, double p,
                                          std::span<const NodeId> chosen) {
  check_chosen(inst, chosen);
  ImprovementReport report;
  report.method = ImprovementMethod::kClosedForm;
  const std::vector<NodeId> active = participating_requesters(inst, p);
  const DirectedGraph& g = inst.graph();
  const int tau = inst.tau();

  if (active.empty()) return report;
  if (chosen.empty()) {
    for (NodeId r : active) report.per_requester[r] = 0;
    return report;
  }

  // Nested visible sets of every chosen supplier up to radius tau-1.
  std::vector<ReachTree> supplier_levels;
  supplier_levels.reserve(chosen.size());
  for (NodeId s : chosen)
    supplier_levels.push_back(bounded_reach(g, s, tau - 1, Direction::kReverse));

  // Original-graph distances from each active requester, capped at tau-1.
  std::vector<std::vector<int>> dist_from(active.size(),
                                          std::vector<int>(g.node_count(), -1));
  for (std::size_t i = 0; i < active.size(); ++i) {
    const ReachTree fwd = bounded_reach(g, active[i], tau - 1, Direction::kForward);
    for (std::size_t k = 0; k < fwd.order.size(); ++k)
      dist_from[i][static_cast<std::size_t>(fwd.order[k])] = fwd.depth[k];
  }

  NodeBitset covered(g.node_count());
  for (NodeId r : active) {
    covered.clear();
    for (std::size_t i = 0; i < active.size(); ++i) {
      const int d = dist_from[i][static_cast<std::size_t>(r)];
      if (d < 0) continue;  // unreachable within tau-1: radius would be negative
      const int radius = tau - 1 - d;
      for (const ReachTree& levels : supplier_levels) {
        const std::size_t prefix = levels.count_within(radius);
        for (std::size_t k = 0; k < prefix; ++k)
          covered.set(static_cast<std::size_t>(levels.order[k]));
      }
    }
    const ReachTree base_reach = bounded_reach(g, r, tau, Direction::kReverse);
    NodeBitset base_visible(g.node_count());
    for (NodeId v : base_reach.order) base_visible.set(static_cast<std::size_t>(v));
    const std::int64_t gained = covered.count_minus(base_visible);
    report.per_requester[r] = gained;
    report.total += gained;
  }
  return report;
}

double revenue(const MarketInstance& inst, PricePoint price,
               std::span<const NodeId> chosen, ImprovementMethod method) {
  check_price(inst, price);
  const ImprovementReport report = method == ImprovementMethod::kExactBfs
                                       ? improvement_exact(inst, price.p, chosen)
                                       : improvement_closed_form(inst, price.p, chosen);
  return (price.p - price.q) * static_cast<double>(report.total);
}

std::pair<double, double> payments(const MarketInstance& inst, PricePoint price,
                                   std::span<const NodeId> chosen) {
  check_price(inst, price);
  // Coverage form; identical to the BFS route for this link model.
  const ImprovementReport report = improvement_closed_form(inst, price.p, chosen);
  const double total = static_cast<double>(report.total);
  return {price.p * total, price.q * total};
}

bool supplier_rationality(const MarketInstance& inst, PricePoint price, NodeId u) {
  check_price(inst, price);
  return inst.supplier_valuation(u) <= inst.alpha() * price.p;
}

ValuationTable load_valuations_csv(const DirectedGraph& graph, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open valuations file: " + path);

  auto resolve = [&](const std::string& token) -> NodeId {
    if (graph.has_labels()) {
      const auto& labels = graph.labels();
      const auto it = std::find(labels.begin(), labels.end(), token);
      if (it == labels.end())
        throw std::runtime_error("valuations file names unknown node '" + token + "'");
      return static_cast<NodeId>(it - labels.begin());
    }
    const long id = std::stol(token);
    graph.check_node(static_cast<NodeId>(id));
    return static_cast<NodeId>(id);
  };

  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error("valuations file is empty: " + path);
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "node,role,valuation")
    throw std::runtime_error("valuations file must start with header node,role,valuation");

  ValuationTable table;
  std::size_t line_number = 1;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string node, role, value;
    if (!std::getline(fields, node, ',') || !std::getline(fields, role, ',') ||
        !std::getline(fields, value))
      throw std::runtime_error("malformed valuations line " + std::to_string(line_number));
    const NodeId id = resolve(node);
    const double val = std::stod(value);
    if (!(val >= 0.0) || !(val <= 1.0))
      throw std::runtime_error("valuation outside [0, 1] on line " +
                               std::to_string(line_number));
    if (role == "requester") {
      table.requesters.push_back(id);
      table.requester_valuations.push_back(val);
    } else if (role == "supplier") {
      table.suppliers.push_back(id);
      table.supplier_valuations.push_back(val);
    } else {
      throw std::runtime_error("unknown role '" + role + "' on line " +
                               std::to_string(line_number));
    }
  }
  return table;
}

MarketInstance market_from_valuations_csv(DirectedGraph graph, const std::string& path,
                                          int tau, int budget, double alpha) {
  ValuationTable table = load_valuations_csv(graph, path);
  return MarketInstance(std::move(graph), std::move(table.requesters),
                        std::move(table.requester_valuations),
                        std::move(table.suppliers),
                        std::move(table.supplier_valuations), tau, budget, alpha);
}

MarketIndex::MarketIndex(MarketInstance inst) : inst_(std::move(inst)) {
  const DirectedGraph& g = inst_.graph();
  const int tau = inst_.tau();
  supplier_cover_.reserve(inst_.suppliers().size());
  supplier_score_.reserve(inst_.suppliers().size());
  for (NodeId s : inst_.suppliers()) {
    const ReachTree cover = bounded_reach(g, s, tau - 1, Direction::kReverse);
    NodeBitset bits(g.node_count());
    for (NodeId v : cover.order) bits.set(static_cast<std::size_t>(v));
    supplier_cover_.push_back(std::move(bits));
    supplier_score_.push_back(visibility_score(g, s, tau));
  }
  requester_visible_.reserve(inst_.requesters().size());
  for (NodeId r : inst_.requesters()) {
    const ReachTree reach = bounded_reach(g, r, tau, Direction::kReverse);
    NodeBitset bits(g.node_count());
    for (NodeId v : reach.order) bits.set(static_cast<std::size_t>(v));
    requester_visible_.push_back(std::move(bits));
  }
}

std::size_t MarketIndex::supplier_position(NodeId s) const {
  const std::size_t pos = [&] {
    const auto ids = inst_.suppliers();
    const auto it = std::lower_bound(ids.begin(), ids.end(), s);
    return (it != ids.end() && *it == s) ? static_cast<std::size_t>(it - ids.begin())
                                         : ids.size();
  }();
  if (pos == inst_.suppliers().size())
    throw std::invalid_argument("node " + std::to_string(s) + " is not a supplier");
  return pos;
}

std::size_t MarketIndex::requester_position(NodeId r) const {
  const auto ids = inst_.requesters();
  const auto it = std::lower_bound(ids.begin(), ids.end(), r);
  if (it == ids.end() || *it != r)
    throw std::invalid_argument("node " + std::to_string(r) + " is not a requester");
  return static_cast<std::size_t>(it - ids.begin());
}

std::int64_t MarketIndex::improvement(double p, std::span<const NodeId> chosen) const {
  const std::vector<NodeId> active = participating_requesters(inst_, p);
  return improvement_over(active, chosen);
}

std::int64_t MarketIndex::improvement_over(std::span<const NodeId> active_requesters,
                                           std::span<const NodeId> chosen) const {
  NodeBitset cover = empty_cover();
  for (NodeId s : chosen) add_cover(cover, s);
  return coverage_total(cover, active_requesters);
}

std::int64_t MarketIndex::supplier_visibility_score(NodeId s) const {
  return supplier_score_[supplier_position(s)];
}

NodeBitset MarketIndex::empty_cover() const {
  return NodeBitset(inst_.graph().node_count());
}

void MarketIndex::add_cover(NodeBitset& cover, NodeId s) const {
  cover |= supplier_cover_[supplier_position(s)];
}

std::int64_t MarketIndex::coverage_total(const NodeBitset& cover,
                                         std::span<const NodeId> active_requesters) const {
  std::int64_t total = 0;
  for (NodeId r : active_requesters)
    total += cover.count_minus(requester_visible_[requester_position(r)]);
  return total;
}

std::int64_t MarketIndex::coverage_total_with(
    const NodeBitset& cover, NodeId s,
    std::span<const NodeId> active_requesters) const {
  const NodeBitset& added = supplier_cover_[supplier_position(s)];
  std::int64_t total = 0;
  for (NodeId r : active_requesters)
    total += cover.count_union_minus(added, requester_visible_[requester_position(r)]);
  return total;
}

}  // namespace vispricer
