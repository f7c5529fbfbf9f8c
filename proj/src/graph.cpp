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

#include "vispricer/graph.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <unordered_map>

namespace vispricer {

namespace {

// Sorts and deduplicates every adjacency list, returning the number of arcs
// removed as duplicates.
std::size_t dedup_adjacency(std::vector<std::vector<NodeId>>& adj) {
  std::size_t dropped = 0;
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    auto last = std::unique(list.begin(), list.end());
    dropped += static_cast<std::size_t>(list.end() - last);
    list.erase(last, list.end());
  }
  return dropped;
}

template <class G>
ReachTree bounded_reach_impl(const G& g, NodeId src, int cap, Direction dir) {
  g.check_node(src);
  ReachTree tree;
  if (cap < 0) return tree;
  std::vector<char> seen(g.node_count(), 0);
  seen[static_cast<std::size_t>(src)] = 1;
  tree.order.push_back(src);
  tree.depth.push_back(0);
  std::size_t frontier_begin = 0;
  std::size_t frontier_end = 1;
  for (int d = 0; d < cap && frontier_begin < frontier_end; ++d) {
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      const NodeId u = tree.order[i];
      auto visit = [&](NodeId v) {
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          tree.order.push_back(v);
          tree.depth.push_back(d + 1);
        }
      };
      if (dir == Direction::kForward)
        g.for_each_out(u, visit);
      else
        g.for_each_in(u, visit);
    }
    frontier_begin = frontier_end;
    frontier_end = tree.order.size();
  }
  return tree;
}

template <class G>
std::optional<int> bounded_distance_impl(const G& g, NodeId from, NodeId to, int cap) {
  g.check_node(from);
  g.check_node(to);
  if (cap < 0) throw std::invalid_argument("bounded_distance: cap must be >= 0");
  if (from == to) return 0;
  std::vector<char> seen(g.node_count(), 0);
  seen[static_cast<std::size_t>(from)] = 1;
  std::vector<NodeId> frontier{from};
  std::vector<NodeId> next;
  for (int d = 0; d < cap && !frontier.empty(); ++d) {
    next.clear();
    for (NodeId u : frontier) {
      bool found = false;
      g.for_each_out(u, [&](NodeId v) {
        if (v == to) found = true;
        if (!seen[static_cast<std::size_t>(v)]) {
          seen[static_cast<std::size_t>(v)] = 1;
          next.push_back(v);
        }
      });
      if (found) return d + 1;
    }
    frontier.swap(next);
  }
  return std::nullopt;
}

template <class G>
VisibleSet visible_set_impl(const G& g, NodeId anchor, int radius) {
  ReachTree tree = bounded_reach_impl(g, anchor, radius, Direction::kReverse);
  VisibleSet vs;
  vs.anchor = anchor;
  vs.radius = radius;
  vs.members = std::move(tree.order);
  std::sort(vs.members.begin(), vs.members.end());
  return vs;
}

}  // namespace

DirectedGraph::DirectedGraph(NodeId node_count, std::span<const Edge> edges,
                             std::vector<std::string> labels)
    : labels_(std::move(labels)) {
  if (node_count < 0)
    throw std::invalid_argument("DirectedGraph: negative node count");
  if (!labels_.empty() && labels_.size() != static_cast<std::size_t>(node_count))
    throw std::invalid_argument("DirectedGraph: label table size mismatch");
  forward_.resize(static_cast<std::size_t>(node_count));
  reverse_.resize(static_cast<std::size_t>(node_count));
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= node_count || v >= node_count)
      throw std::invalid_argument("DirectedGraph: edge endpoint out of range");
    if (u == v) continue;
    forward_[static_cast<std::size_t>(u)].push_back(v);
    reverse_[static_cast<std::size_t>(v)].push_back(u);
  }
  dedup_adjacency(forward_);
  dedup_adjacency(reverse_);
  for (const auto& list : forward_) arc_count_ += list.size();
}

std::span<const NodeId> DirectedGraph::out_neighbors(NodeId u) const {
  check_node(u);
  return forward_[static_cast<std::size_t>(u)];
}

std::span<const NodeId> DirectedGraph::in_neighbors(NodeId u) const {
  check_node(u);
  return reverse_[static_cast<std::size_t>(u)];
}

bool DirectedGraph::has_edge(NodeId u, NodeId v) const {
  check_node(u);
  check_node(v);
  const auto& list = forward_[static_cast<std::size_t>(u)];
  return std::binary_search(list.begin(), list.end(), v);
}

std::string DirectedGraph::display_label(NodeId u) const {
  check_node(u);
  if (has_labels()) return labels_[static_cast<std::size_t>(u)];
  return std::to_string(u);
}

void DirectedGraph::check_node(NodeId u) const {
  if (u < 0 || static_cast<std::size_t>(u) >= forward_.size())
    throw std::out_of_range("node id " + std::to_string(u) + " out of range");
}

OverlayGraph::OverlayGraph(const DirectedGraph& base, std::span<const Edge> extra_edges)
    : base_(&base) {
  if (extra_edges.empty()) return;
  extra_out_.resize(base.node_count());
  extra_in_.resize(base.node_count());
  for (const auto& [u, v] : extra_edges) {
    base.check_node(u);
    base.check_node(v);
    if (u == v) continue;
    if (base.has_edge(u, v)) continue;
    extra_out_[static_cast<std::size_t>(u)].push_back(v);
    extra_in_[static_cast<std::size_t>(v)].push_back(u);
  }
  dedup_adjacency(extra_out_);
  dedup_adjacency(extra_in_);
  for (const auto& list : extra_out_) extra_arc_count_ += list.size();
}

bool VisibleSet::contains(NodeId v) const {
  return std::binary_search(members.begin(), members.end(), v);
}

std::size_t ReachTree::count_within(int d) const {
  return static_cast<std::size_t>(
      std::upper_bound(depth.begin(), depth.end(), d) - depth.begin());
}

ReachTree bounded_reach(const DirectedGraph& g, NodeId src, int cap, Direction dir) {
  return bounded_reach_impl(g, src, cap, dir);
}

ReachTree bounded_reach(const OverlayGraph& g, NodeId src, int cap, Direction dir) {
  return bounded_reach_impl(g, src, cap, dir);
}

std::optional<int> bounded_distance(const DirectedGraph& g, NodeId from, NodeId to, int cap) {
  return bounded_distance_impl(g, from, to, cap);
}

std::optional<int> bounded_distance(const OverlayGraph& g, NodeId from, NodeId to, int cap) {
  return bounded_distance_impl(g, from, to, cap);
}

VisibleSet visible_set(const DirectedGraph& g, NodeId anchor, int radius) {
  return visible_set_impl(g, anchor, radius);
}

VisibleSet visible_set(const OverlayGraph& g, NodeId anchor, int radius) {
  return visible_set_impl(g, anchor, radius);
}

std::vector<VisibleSet> leveled_visible_sets(const DirectedGraph& g, NodeId anchor,
                                             int max_radius) {
  if (max_radius < 0)
    throw std::invalid_argument("leveled_visible_sets: max_radius must be >= 0");
  ReachTree tree = bounded_reach(g, anchor, max_radius, Direction::kReverse);
  std::vector<VisibleSet> levels;
  levels.reserve(static_cast<std::size_t>(max_radius) + 1);
  for (int k = 0; k <= max_radius; ++k) {
    VisibleSet vs;
    vs.anchor = anchor;
    vs.radius = k;
    vs.members.assign(tree.order.begin(),
                      tree.order.begin() + static_cast<std::ptrdiff_t>(tree.count_within(k)));
    std::sort(vs.members.begin(), vs.members.end());
    levels.push_back(std::move(vs));
  }
  return levels;
}

std::int64_t visibility_score(const DirectedGraph& g, NodeId u, int tau) {
  if (tau < 1) throw std::invalid_argument("visibility_score: tau must be >= 1");
  ReachTree tree = bounded_reach(g, u, tau, Direction::kReverse);
  return static_cast<std::int64_t>(tree.order.size()) - 1;
}

DirectedGraph load_edge_list(const std::string& path, bool undirected, LoadReport* report) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open edge list: " + path);

  LoadReport local;
  std::unordered_map<std::string, NodeId> id_of;
  std::vector<std::string> labels;
  std::vector<Edge> edges;

  auto intern = [&](const std::string& token) {
    auto [it, inserted] = id_of.emplace(token, static_cast<NodeId>(labels.size()));
    if (inserted) labels.push_back(token);
    return it->second;
  };

  std::string line;
  std::size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t first = line.find_first_not_of(" \t");
    if (first == std::string::npos) continue;
    if (line[first] == '#' || line[first] == '%') continue;

    std::istringstream fields(line);
    std::string src, dst, excess;
    if (!(fields >> src >> dst) || (fields >> excess))
      throw std::runtime_error("malformed edge list line " + std::to_string(line_number) +
                               " in " + path + ": expected two tokens");
    ++local.data_lines;
    const NodeId u = intern(src);
    const NodeId v = intern(dst);
    if (u == v) {
      ++local.self_loops_dropped;
      continue;
    }
    edges.emplace_back(u, v);
    if (undirected) edges.emplace_back(v, u);
  }

  const std::size_t inserted_arcs = edges.size();
  const NodeId node_count = static_cast<NodeId>(labels.size());
  DirectedGraph graph(node_count, edges, std::move(labels));
  local.duplicate_arcs_dropped = inserted_arcs - graph.arc_count();
  if (report) *report = local;
  return graph;
}

}  // namespace vispricer
