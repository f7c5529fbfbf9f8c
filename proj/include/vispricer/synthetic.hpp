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

#include "vispricer/market.hpp"

namespace vispricer {

/// Tiny deterministic fixtures so every pipeline and cross-check can run
/// without external datasets.

/// 0 -> 1 -> ... -> n-1.
DirectedGraph make_path_graph(int n);

/// Node 0 is the hub; each of the `leaves` nodes 1..leaves points at it.
DirectedGraph make_star_graph(int leaves);

/// Directed Erdos-Renyi: every ordered pair (u, v), u != v, appears
/// independently with probability edge_prob.
DirectedGraph make_random_digraph(int n, double edge_prob, std::uint64_t seed);

/// Two dense blocks of sizes n1 and n2 with sparse cross links.
DirectedGraph make_two_community_graph(int n1, int n2, double p_in, double p_out,
                                       std::uint64_t seed);

/// Random disjoint requester/supplier roles with uniform [0,1] valuations,
/// fully determined by the seed.
MarketInstance make_uniform_market(DirectedGraph graph, int n_requesters,
                                   int n_suppliers, int tau, int budget, double alpha,
                                   std::uint64_t seed);

}  // namespace vispricer
