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
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace vispricer {

using NodeId = std::int32_t;
using Edge = std::pair<NodeId, NodeId>;

/// Counters reported by the edge-list loader. Real datasets contain
/// self-loops and parallel edges; both are removed on ingestion.
struct LoadReport {
  std::size_t data_lines = 0;
  std::size_t self_loops_dropped = 0;
  std::size_t duplicate_arcs_dropped = 0;
};

/// Immutable directed graph over dense node ids 0..n-1 with both adjacency
/// directions materialized. Neighbor lists are sorted and duplicate-free,
/// and self-loops are never stored. Safe to share across concurrent readers.
class DirectedGraph {
 public:
  DirectedGraph() = default;
  DirectedGraph(NodeId node_count, std::span<const Edge> edges,
                std::vector<std::string> labels = {});

  std::size_t node_count() const { return forward_.size(); }
  std::size_t arc_count() const { return arc_count_; }

  std::span<const NodeId> out_neighbors(NodeId u) const;
  std::span<const NodeId> in_neighbors(NodeId u) const;
  bool has_edge(NodeId u, NodeId v) const;

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Original token for u, or its decimal id when the graph is unlabeled.
  std::string display_label(NodeId u) const;

  /// Throws std::out_of_range for ids outside [0, node_count).
  void check_node(NodeId u) const;

  template <class Fn>
  void for_each_out(NodeId u, Fn&& fn) const {
    for (NodeId v : out_neighbors(u)) fn(v);
  }
  template <class Fn>
  void for_each_in(NodeId u, Fn&& fn) const {
    for (NodeId v : in_neighbors(u)) fn(v);
  }

 private:
  std::vector<std::vector<NodeId>> forward_;
  std::vector<std::vector<NodeId>> reverse_;
  std::vector<std::string> labels_;
  std::size_t arc_count_ = 0;
};

/// A directed graph plus a set of extra edges, used for what-if reachability
/// without copying the base. Extra edges duplicating base edges are ignored
/// and self-loops are dropped, so queries treat base and extra identically.
class OverlayGraph {
 public:
  OverlayGraph(const DirectedGraph& base, std::span<const Edge> extra_edges);

  const DirectedGraph& base() const { return *base_; }
  std::size_t node_count() const { return base_->node_count(); }
  std::size_t extra_arc_count() const { return extra_arc_count_; }

  void check_node(NodeId u) const { base_->check_node(u); }

  template <class Fn>
  void for_each_out(NodeId u, Fn&& fn) const {
    for (NodeId v : base_->out_neighbors(u)) fn(v);
    if (!extra_out_.empty())
      for (NodeId v : extra_out_[static_cast<std::size_t>(u)]) fn(v);
  }
  template <class Fn>
  void for_each_in(NodeId u, Fn&& fn) const {
    for (NodeId v : base_->in_neighbors(u)) fn(v);
    if (!extra_in_.empty())
      for (NodeId v : extra_in_[static_cast<std::size_t>(u)]) fn(v);
  }

 private:
  const DirectedGraph* base_;
  std::vector<std::vector<NodeId>> extra_out_;
  std::vector<std::vector<NodeId>> extra_in_;
  std::size_t extra_arc_count_ = 0;
};

/// All nodes that can reach `anchor` within `radius` hops (the anchor itself
/// included for radius >= 0). Members are sorted ascending.
struct VisibleSet {
  NodeId anchor = 0;
  int radius = 0;
  std::vector<NodeId> members;

  bool contains(NodeId v) const;
  std::size_t size() const { return members.size(); }
};

/// Nodes discovered by a depth-capped BFS, grouped by hop distance from the
/// source. `order` is BFS order, so nodes within distance d form a prefix.
struct ReachTree {
  std::vector<NodeId> order;
  std::vector<int> depth;  // aligned with order, non-decreasing

  std::size_t count_within(int d) const;
};

enum class Direction { kForward, kReverse };

ReachTree bounded_reach(const DirectedGraph& g, NodeId src, int cap, Direction dir);
ReachTree bounded_reach(const OverlayGraph& g, NodeId src, int cap, Direction dir);

/// Shortest-path hop count from `from` to `to`, or nullopt when it exceeds
/// `cap` (including the unreachable case). Distance from a node to itself is 0.
std::optional<int> bounded_distance(const DirectedGraph& g, NodeId from, NodeId to, int cap);
std::optional<int> bounded_distance(const OverlayGraph& g, NodeId from, NodeId to, int cap);

/// Depth-limited reverse BFS from `anchor`. A negative radius yields the
/// empty set.
VisibleSet visible_set(const DirectedGraph& g, NodeId anchor, int radius);
VisibleSet visible_set(const OverlayGraph& g, NodeId anchor, int radius);

/// One reverse BFS producing the nested family; entry k equals
/// visible_set(g, anchor, k).
std::vector<VisibleSet> leveled_visible_sets(const DirectedGraph& g, NodeId anchor,
                                             int max_radius);

/// Number of users, excluding u itself, that can reach u within tau hops.
std::int64_t visibility_score(const DirectedGraph& g, NodeId u, int tau);

/// Reads a whitespace-separated edge list. Lines starting with '#' or '%'
/// are comments; blank lines are skipped. Node tokens are arbitrary
/// non-whitespace strings, assigned dense ids in first-appearance order.
/// With `undirected`, each line inserts both arcs. Self-loop lines are
/// dropped (counted in the report) and parallel edges are collapsed.
DirectedGraph load_edge_list(const std::string& path, bool undirected,
                             LoadReport* report = nullptr);

}  // namespace vispricer
