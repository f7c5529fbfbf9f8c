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

// Textbook re-implementations used as independent oracles. They share no
// traversal code with the library: plain queue BFS over explicit adjacency
// vectors, no depth caps, no bitsets.

#pragma once

#include <deque>
#include <set>
#include <vector>

#include "vispricer/market.hpp"
#include "vispricer/synthetic.hpp"

namespace vispricer::testing {

inline constexpr int kUnreachable = -1;

inline std::vector<std::vector<NodeId>> oracle_adjacency(
    std::size_t n, const std::vector<Edge>& edges) {
  std::vector<std::vector<NodeId>> adj(n);
  std::set<Edge> unique_edges(edges.begin(), edges.end());
  for (const auto& [u, v] : unique_edges)
    if (u != v) adj[static_cast<std::size_t>(u)].push_back(v);
  return adj;
}

inline std::vector<int> oracle_bfs(const std::vector<std::vector<NodeId>>& adj,
                                   NodeId src) {
  std::vector<int> dist(adj.size(), kUnreachable);
  dist[static_cast<std::size_t>(src)] = 0;
  std::deque<NodeId> queue{src};
  while (!queue.empty()) {
    const NodeId u = queue.front();
    queue.pop_front();
    for (NodeId v : adj[static_cast<std::size_t>(u)]) {
      if (dist[static_cast<std::size_t>(v)] == kUnreachable) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

inline std::vector<Edge> graph_edges(const DirectedGraph& g) {
  std::vector<Edge> edges;
  for (NodeId u = 0; static_cast<std::size_t>(u) < g.node_count(); ++u)
    for (NodeId v : g.out_neighbors(u)) edges.emplace_back(u, v);
  return edges;
}

/// Forward distances in the plain graph, src -> every node.
inline std::vector<int> oracle_forward_distances(const DirectedGraph& g, NodeId src) {
  return oracle_bfs(oracle_adjacency(g.node_count(), graph_edges(g)), src);
}

/// {v : dist(v -> anchor) <= radius} by running a forward BFS from every node.
inline std::set<NodeId> oracle_visible_set(std::size_t n, const std::vector<Edge>& edges,
                                           NodeId anchor, int radius) {
  std::set<NodeId> members;
  if (radius < 0) return members;
  const auto adj = oracle_adjacency(n, edges);
  for (std::size_t v = 0; v < n; ++v) {
    const std::vector<int> dist = oracle_bfs(adj, static_cast<NodeId>(v));
    const int d = dist[static_cast<std::size_t>(anchor)];
    if (d != kUnreachable && d <= radius) members.insert(static_cast<NodeId>(v));
  }
  return members;
}

/// Improvement ground truth built from explicit edge lists: base visible set
/// versus visible set after adding every chosen-supplier -> active-requester
/// arc, both at radius tau.
inline std::int64_t oracle_improvement(const MarketInstance& inst, double p,
                                       const std::vector<NodeId>& chosen) {
  const std::size_t n = inst.graph().node_count();
  std::vector<Edge> base = graph_edges(inst.graph());
  std::vector<Edge> overlay = base;
  const std::vector<NodeId> active = participating_requesters(inst, p);
  for (NodeId s : chosen)
    for (NodeId r : active) overlay.emplace_back(s, r);
  std::int64_t total = 0;
  for (NodeId r : active) {
    const std::set<NodeId> before = oracle_visible_set(n, base, r, inst.tau());
    const std::set<NodeId> after = oracle_visible_set(n, overlay, r, inst.tau());
    for (NodeId v : after)
      if (!before.count(v)) ++total;
  }
  return total;
}

}  // namespace vispricer::testing
