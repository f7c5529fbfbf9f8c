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
#include <map>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "vispricer/bitset.hpp"
#include "vispricer/graph.hpp"

namespace vispricer {

/// Absolute tolerance for the q = alpha * p coupling.
inline constexpr double kPriceTolerance = 1e-12;

/// Posted price pair: p charged per unit of visibility improvement to each
/// participating requester, q paid per unit to each participating supplier.
struct PricePoint {
  double p = 0.0;
  double q = 0.0;

  static PricePoint with_alpha(double p, double alpha) { return {p, alpha * p}; }
};

/// One market over an immutable graph: disjoint requester/supplier id sets,
/// per-user unit valuations in [0,1], the visibility threshold tau, the
/// per-requester budget b (max new in-neighbors), and the revenue-share
/// fraction alpha in (0,1). Construction validates all invariants.
class MarketInstance {
 public:
  MarketInstance(DirectedGraph graph, std::vector<NodeId> requesters,
                 std::vector<double> requester_valuations,
                 std::vector<NodeId> suppliers,
                 std::vector<double> supplier_valuations, int tau, int budget,
                 double alpha);

  const DirectedGraph& graph() const { return graph_; }
  std::span<const NodeId> requesters() const { return requesters_; }
  std::span<const NodeId> suppliers() const { return suppliers_; }
  /// Aligned with requesters() / suppliers() respectively.
  std::span<const double> requester_valuations() const { return requester_vals_; }
  std::span<const double> supplier_valuations() const { return supplier_vals_; }

  bool is_requester(NodeId u) const;
  bool is_supplier(NodeId u) const;
  double requester_valuation(NodeId u) const;
  double supplier_valuation(NodeId u) const;

  int tau() const { return tau_; }
  int budget() const { return budget_; }
  double alpha() const { return alpha_; }

  MarketInstance with_budget(int budget) const;

 private:
  DirectedGraph graph_;
  std::vector<NodeId> requesters_;       // sorted ascending
  std::vector<double> requester_vals_;   // aligned
  std::vector<NodeId> suppliers_;        // sorted ascending
  std::vector<double> supplier_vals_;    // aligned
  int tau_;
  int budget_;
  double alpha_;
};

enum class ImprovementMethod { kExactBfs, kClosedForm };

std::string to_string(ImprovementMethod method);

/// Per-requester visibility improvements and their sum.
struct ImprovementReport {
  std::map<NodeId, std::int64_t> per_requester;
  std::int64_t total = 0;
  ImprovementMethod method = ImprovementMethod::kExactBfs;
};

struct ParticipationProfile {
  PricePoint price;
  std::vector<NodeId> active_requesters;
  std::vector<NodeId> potential_suppliers;
};

/// Requesters with valuation >= p (ties participate).
std::vector<NodeId> participating_requesters(const MarketInstance& inst, double p);

/// Suppliers with valuation <= q (ties participate).
std::vector<NodeId> potential_suppliers(const MarketInstance& inst, double q);

ParticipationProfile participation_profile(const MarketInstance& inst, PricePoint price);

/// Overlay adding one edge supplier -> requester for every chosen supplier
/// and every requester active at price p. Edges already present in the base
/// are not duplicated. The overlay borrows the instance's graph; keep the
/// instance alive while using it.
OverlayGraph augmented_graph(const MarketInstance& inst, double p,
                             std::span<const NodeId> chosen);

/// Ground-truth improvement: per active requester, the tau-hop visible set
/// on the augmented graph minus the one on the base graph.
ImprovementReport improvement_exact(const MarketInstance& inst, double p,
                                    std::span<const NodeId> chosen);

/// Coverage-form improvement: per active requester r, the union of
/// visible_set(s, tau-1-D(r',r)) over chosen suppliers s and active
/// requesters r', minus visible_set(r, tau). All distances are measured in
/// the original graph; negative radii contribute the empty set.
ImprovementReport improvement_closed_form(const MarketInstance& inst, double p,
                                          std::span<const NodeId> chosen);

/// Operator revenue (p - q) * I(p, chosen) with I computed by `method`.
/// Throws when q deviates from alpha * p by more than kPriceTolerance.
double revenue(const MarketInstance& inst, PricePoint price,
               std::span<const NodeId> chosen, ImprovementMethod method);

/// (total requester payment p*I, supplier reward pool q*I).
std::pair<double, double> payments(const MarketInstance& inst, PricePoint price,
                                   std::span<const NodeId> chosen);

/// True iff supplier u can rationally participate at this price (q_u <= alpha*p,
/// tie included); agrees with membership in potential_suppliers(inst, alpha*p).
bool supplier_rationality(const MarketInstance& inst, PricePoint price, NodeId u);

/// Parsed `node,role,valuation` CSV (see load_valuations_csv).
struct ValuationTable {
  std::vector<NodeId> requesters;
  std::vector<double> requester_valuations;
  std::vector<NodeId> suppliers;
  std::vector<double> supplier_valuations;
};

/// Reads a valuations CSV with header `node,role,valuation`; role is
/// `requester` or `supplier`, valuation lies in [0,1], and node tokens must
/// resolve against the graph's label table (or decimal ids when unlabeled).
ValuationTable load_valuations_csv(const DirectedGraph& graph, const std::string& path);

MarketInstance market_from_valuations_csv(DirectedGraph graph, const std::string& path,
                                          int tau, int budget, double alpha);

/// Precomputed visibility coverage for one market instance: per supplier the
/// (tau-1)-radius visible set, per requester the tau-radius visible set, and
/// supplier visibility scores. Improvement of any supplier set then reduces
/// to bitset coverage counts; this is the optimizer's objective evaluator and
/// agrees with improvement_closed_form on every input.
class MarketIndex {
 public:
  explicit MarketIndex(MarketInstance inst);

  const MarketInstance& instance() const { return inst_; }

  /// I(p, chosen) in coverage form.
  std::int64_t improvement(double p, std::span<const NodeId> chosen) const;
  /// Same with a precomputed active-requester set.
  std::int64_t improvement_over(std::span<const NodeId> active_requesters,
                                std::span<const NodeId> chosen) const;

  std::int64_t supplier_visibility_score(NodeId s) const;

  /// Incremental-evaluation hooks for the selection loops. `cover` starts
  /// empty; add_cover folds in one supplier's visible set.
  NodeBitset empty_cover() const;
  void add_cover(NodeBitset& cover, NodeId s) const;
  /// Sum over active requesters of |cover \ visible(r, tau)|.
  std::int64_t coverage_total(const NodeBitset& cover,
                              std::span<const NodeId> active_requesters) const;
  /// Same after virtually adding supplier s to the cover.
  std::int64_t coverage_total_with(const NodeBitset& cover, NodeId s,
                                   std::span<const NodeId> active_requesters) const;

 private:
  std::size_t supplier_position(NodeId s) const;
  std::size_t requester_position(NodeId r) const;

  MarketInstance inst_;
  std::vector<NodeBitset> supplier_cover_;     // V(s, tau-1), by supplier position
  std::vector<NodeBitset> requester_visible_;  // V(r, tau), by requester position
  std::vector<std::int64_t> supplier_score_;   // visibility_score(s, tau)
};

}  // namespace vispricer
