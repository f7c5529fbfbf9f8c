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
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <unordered_map>
#include <vector>

#include "json.hpp"
#include "vispricer/market.hpp"

namespace vispricer {

/// Exact Shapley enumeration refuses games larger than this (2^n subsets).
inline constexpr std::size_t kShapleyExactPlayerLimit = 20;

/// Cooperative game over a fixed player list with a memoized integer-valued
/// characteristic function. The characteristic must map the empty set to 0
/// (checked at construction). The memo table is not synchronized; callers
/// running games concurrently must serialize evaluations per game.
class CoalitionGame {
 public:
  CoalitionGame(std::vector<NodeId> players,
                std::function<std::int64_t(std::span<const NodeId>)> characteristic);

  const std::vector<NodeId>& players() const { return players_; }
  std::size_t player_count() const { return players_.size(); }

  /// Value of the subset encoded as a bitmask over player positions.
  std::int64_t value(std::uint32_t mask) const;
  /// Value of an explicit subset of the player list.
  std::int64_t value(std::span<const NodeId> subset) const;

 private:
  std::vector<NodeId> players_;
  std::function<std::int64_t(std::span<const NodeId>)> characteristic_;
  mutable std::unordered_map<std::uint32_t, std::int64_t> cache_;
};

enum class ShapleyMethod { kExact, kSampled };

std::string to_string(ShapleyMethod method);

struct ShapleyAllocation {
  std::map<NodeId, double> shares;   // phi per player
  std::map<NodeId, double> rewards;  // q * phi, filled by reward_allocation
  ShapleyMethod method = ShapleyMethod::kExact;
  int sample_count = 0;      // K; 0 for the exact method
  double error_bound = 0.0;  // sampled only: Hoeffding radius at the given confidence
  double confidence = 1.0;   // 1 - delta
  std::int64_t total_value = 0;  // characteristic of the full player set
};

/// Deterministic permutation stream: identical (seed, rounds) reproduce the
/// identical sequence, and round k's permutation depends only on (seed, k).
struct PermutationSampler {
  std::uint64_t seed = 0;
  int rounds = 1;
};

/// Weighted-marginal sum over all subsets, with exact integer arithmetic and
/// floating division only at the end. Shares satisfy efficiency: they sum to
/// the grand-coalition value.
ShapleyAllocation shapley_exact(const CoalitionGame& game);

/// Monte Carlo estimate: each round draws one uniform permutation of the full
/// player list and credits every player its prefix marginal, so one round
/// refreshes all running means. error_bound reports the Hoeffding radius at
/// confidence 1-delta using the largest marginal observed while sampling.
ShapleyAllocation shapley_sampled(const CoalitionGame& game,
                                  const PermutationSampler& sampler, double delta);

/// max_marginal / sqrt(K) * sqrt(ln(2/delta) / 2).
double hoeffding_bound(double max_marginal, int rounds, double delta);

/// Monetary rewards q * phi per player.
std::map<NodeId, double> reward_allocation(const ShapleyAllocation& allocation, double q);

/// True iff every player's exact share is bounded by its stand-alone value
/// (holds for subadditive characteristics). Requires an exact allocation.
bool standalone_check(const CoalitionGame& game, const ShapleyAllocation& allocation);

/// Game whose characteristic is the coverage-form improvement I(p, subset)
/// on the given market. Players must be suppliers of the instance.
CoalitionGame make_improvement_game(std::shared_ptr<const MarketIndex> index, double p,
                                    std::vector<NodeId> players);

/// {method, K, delta, error_bound, shares, rewards, total_improvement}.
nlohmann::json allocation_to_json(const ShapleyAllocation& allocation,
                                  const DirectedGraph& graph);

}  // namespace vispricer
