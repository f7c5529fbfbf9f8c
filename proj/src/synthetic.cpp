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

#include "vispricer/synthetic.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "vispricer/random.hpp"

namespace vispricer {

DirectedGraph make_path_graph(int n) {
  if (n < 0) throw std::invalid_argument("make_path_graph: negative size");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i)
    edges.emplace_back(static_cast<NodeId>(i), static_cast<NodeId>(i + 1));
  return DirectedGraph(static_cast<NodeId>(n), edges);
}

DirectedGraph make_star_graph(int leaves) {
  if (leaves < 0) throw std::invalid_argument("make_star_graph: negative leaf count");
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.emplace_back(static_cast<NodeId>(i), 0);
  return DirectedGraph(static_cast<NodeId>(leaves + 1), edges);
}

DirectedGraph make_random_digraph(int n, double edge_prob, std::uint64_t seed) {
  if (n < 0) throw std::invalid_argument("make_random_digraph: negative size");
  if (!(edge_prob >= 0.0) || !(edge_prob <= 1.0))
    throw std::invalid_argument("make_random_digraph: edge_prob must lie in [0, 1]");
  Rng rng(seed);
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v)
      if (u != v && rng.next_unit() < edge_prob)
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
  return DirectedGraph(static_cast<NodeId>(n), edges);
}

DirectedGraph make_two_community_graph(int n1, int n2, double p_in, double p_out,
                                       std::uint64_t seed) {
  if (n1 < 0 || n2 < 0)
    throw std::invalid_argument("make_two_community_graph: negative block size");
  Rng rng(seed);
  const int n = n1 + n2;
  std::vector<Edge> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      if (u == v) continue;
      const bool same_block = (u < n1) == (v < n1);
      if (rng.next_unit() < (same_block ? p_in : p_out))
        edges.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
    }
  }
  return DirectedGraph(static_cast<NodeId>(n), edges);
}

MarketInstance make_uniform_market(DirectedGraph graph, int n_requesters,
                                   int n_suppliers, int tau, int budget, double alpha,
                                   std::uint64_t seed) {
  const int n = static_cast<int>(graph.node_count());
  if (n_requesters < 0 || n_suppliers < 0 || n_requesters + n_suppliers > n)
    throw std::invalid_argument("make_uniform_market: role counts exceed population");
  Rng rng(seed);
  std::vector<NodeId> ids(static_cast<std::size_t>(n));
  std::iota(ids.begin(), ids.end(), NodeId{0});
  // Partial Fisher-Yates: the first n_requesters + n_suppliers slots become
  // the role draw, requesters first.
  for (int i = 0; i < n_requesters + n_suppliers; ++i) {
    const std::size_t j = static_cast<std::size_t>(i) +
                          static_cast<std::size_t>(rng.next_below(
                              static_cast<std::uint64_t>(n - i)));
    std::swap(ids[static_cast<std::size_t>(i)], ids[j]);
  }
  std::vector<NodeId> requesters(ids.begin(), ids.begin() + n_requesters);
  std::vector<NodeId> suppliers(ids.begin() + n_requesters,
                                ids.begin() + n_requesters + n_suppliers);
  std::sort(requesters.begin(), requesters.end());
  std::sort(suppliers.begin(), suppliers.end());
  std::vector<double> requester_vals;
  requester_vals.reserve(requesters.size());
  for (std::size_t i = 0; i < requesters.size(); ++i)
    requester_vals.push_back(rng.next_unit());
  std::vector<double> supplier_vals;
  supplier_vals.reserve(suppliers.size());
  for (std::size_t i = 0; i < suppliers.size(); ++i)
    supplier_vals.push_back(rng.next_unit());
  return MarketInstance(std::move(graph), std::move(requesters),
                        std::move(requester_vals), std::move(suppliers),
                        std::move(supplier_vals), tau, budget, alpha);
}

}  // namespace vispricer
