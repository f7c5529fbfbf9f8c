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

#include "vispricer/shapley.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>

#include "vispricer/random.hpp"

namespace vispricer {

namespace {

std::vector<std::uint64_t> factorial_table(std::size_t n) {
  std::vector<std::uint64_t> fact(n + 1, 1);
  for (std::size_t i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;  // fits for n <= 20
  return fact;
}

}  // namespace

CoalitionGame::CoalitionGame(
    std::vector<NodeId> players,
    std::function<std::int64_t(std::span<const NodeId>)> characteristic)
    : players_(std::move(players)), characteristic_(std::move(characteristic)) {
  if (!characteristic_) throw std::invalid_argument("characteristic function is empty");
  if (players_.size() > 31)
    throw std::invalid_argument("CoalitionGame supports at most 31 players");
  for (std::size_t i = 1; i < players_.size(); ++i)
    if (players_[i] == players_[i - 1])
      throw std::invalid_argument("duplicate player id");
  if (characteristic_({}) != 0)
    throw std::invalid_argument("characteristic of the empty set must be 0");
  cache_.emplace(0u, 0);
}

std::int64_t CoalitionGame::value(std::uint32_t mask) const {
  if (mask >> players_.size())
    throw std::invalid_argument("subset mask addresses unknown players");
  const auto it = cache_.find(mask);
  if (it != cache_.end()) return it->second;
  std::vector<NodeId> subset;
  for (std::size_t i = 0; i < players_.size(); ++i)
    if (mask >> i & 1u) subset.push_back(players_[i]);
  const std::int64_t v = characteristic_(subset);
  cache_.emplace(mask, v);
  return v;
}

std::int64_t CoalitionGame::value(std::span<const NodeId> subset) const {
  std::uint32_t mask = 0;
  for (NodeId id : subset) {
    const auto it = std::find(players_.begin(), players_.end(), id);
    if (it == players_.end())
      throw std::invalid_argument("subset member " + std::to_string(id) +
                                  " is not a player");
    mask |= 1u << static_cast<std::uint32_t>(it - players_.begin());
  }
  return value(mask);
}

std::string to_string(ShapleyMethod method) {
  return method == ShapleyMethod::kExact ? "exact" : "sampled";
}

ShapleyAllocation shapley_exact(const CoalitionGame& game) {
  const std::size_t n = game.player_count();
  if (n > kShapleyExactPlayerLimit)
    throw std::invalid_argument("shapley_exact: " + std::to_string(n) +
                                " players exceed the exact-enumeration limit of " +
                                std::to_string(kShapleyExactPlayerLimit));
  ShapleyAllocation alloc;
  alloc.method = ShapleyMethod::kExact;
  if (n == 0) return alloc;

  const std::vector<std::uint64_t> fact = factorial_table(n);
  const std::uint32_t full = (n == 32) ? ~0u : (1u << n) - 1u;

  // phi_u = (1/n!) * sum over subsets M without u of
  //         |M|! (n-|M|-1)! * (v(M+u) - v(M)),
  // accumulated as exact integers; only the final division is floating point.
  std::vector<__int128> numerators(n, 0);
  for (std::uint32_t mask = 0; mask <= full; ++mask) {
    const int size = std::popcount(mask);
    const std::int64_t base = game.value(mask);
    for (std::size_t u = 0; u < n; ++u) {
      if (mask >> u & 1u) continue;
      const std::uint64_t weight = fact[static_cast<std::size_t>(size)] *
                                   fact[n - static_cast<std::size_t>(size) - 1];
      const std::int64_t with = game.value(mask | (1u << u));
      numerators[u] += static_cast<__int128>(weight) * (with - base);
    }
    if (mask == full) break;  // avoid wraparound when full == UINT32_MAX
  }

  const long double denom = static_cast<long double>(fact[n]);
  for (std::size_t u = 0; u < n; ++u)
    alloc.shares[game.players()[u]] =
        static_cast<double>(static_cast<long double>(numerators[u]) / denom);
  alloc.total_value = game.value(full);
  return alloc;
}

ShapleyAllocation shapley_sampled(const CoalitionGame& game,
                                  const PermutationSampler& sampler, double delta) {
  if (sampler.rounds < 1)
    throw std::invalid_argument("shapley_sampled: rounds must be >= 1");
  if (!(delta > 0.0) || !(delta <= 1.0))
    throw std::invalid_argument("shapley_sampled: delta must lie in (0, 1]");
  const std::size_t n = game.player_count();
  ShapleyAllocation alloc;
  alloc.method = ShapleyMethod::kSampled;
  alloc.sample_count = sampler.rounds;
  alloc.confidence = 1.0 - delta;
  if (n == 0) return alloc;

  std::vector<long double> sums(n, 0.0L);
  std::vector<std::size_t> order(n);
  std::int64_t max_marginal = 0;
  for (int k = 1; k <= sampler.rounds; ++k) {
    Rng rng = Rng::for_stream(sampler.seed, static_cast<std::uint64_t>(k));
    std::iota(order.begin(), order.end(), std::size_t{0});
    shuffle_span(std::span<std::size_t>(order), rng);
    std::uint32_t mask = 0;
    std::int64_t previous = 0;
    for (std::size_t position : order) {
      mask |= 1u << position;
      const std::int64_t current = game.value(mask);
      const std::int64_t marginal = current - previous;
      sums[position] += static_cast<long double>(marginal);
      max_marginal = std::max(max_marginal, marginal);
      previous = current;
    }
  }
  for (std::size_t u = 0; u < n; ++u)
    alloc.shares[game.players()[u]] =
        static_cast<double>(sums[u] / static_cast<long double>(sampler.rounds));
  alloc.error_bound =
      hoeffding_bound(static_cast<double>(max_marginal), sampler.rounds, delta);
  alloc.total_value = game.value((n == 32) ? ~0u : (1u << n) - 1u);
  return alloc;
}

double hoeffding_bound(double max_marginal, int rounds, double delta) {
  if (max_marginal < 0.0)
    throw std::invalid_argument("hoeffding_bound: max_marginal must be >= 0");
  if (rounds < 1) throw std::invalid_argument("hoeffding_bound: rounds must be >= 1");
  if (!(delta > 0.0) || !(delta <= 1.0))
    throw std::invalid_argument("hoeffding_bound: delta must lie in (0, 1]");
  return max_marginal / std::sqrt(static_cast<double>(rounds)) *
         std::sqrt(0.5 * std::log(2.0 / delta));
}

std::map<NodeId, double> reward_allocation(const ShapleyAllocation& allocation, double q) {
  std::map<NodeId, double> rewards;
  for (const auto& [player, share] : allocation.shares) rewards[player] = q * share;
  return rewards;
}

bool standalone_check(const CoalitionGame& game, const ShapleyAllocation& allocation) {
  if (allocation.method != ShapleyMethod::kExact)
    throw std::invalid_argument("standalone_check requires an exact allocation");
  for (std::size_t u = 0; u < game.player_count(); ++u) {
    const double share = allocation.shares.at(game.players()[u]);
    const double alone = static_cast<double>(game.value(1u << u));
    if (share > alone + 1e-9) return false;
  }
  return true;
}

CoalitionGame make_improvement_game(std::shared_ptr<const MarketIndex> index, double p,
                                    std::vector<NodeId> players) {
  if (!index) throw std::invalid_argument("make_improvement_game: null index");
  std::sort(players.begin(), players.end());
  for (NodeId s : players)
    if (!index->instance().is_supplier(s))
      throw std::invalid_argument("player " + std::to_string(s) + " is not a supplier");
  auto active = std::make_shared<const std::vector<NodeId>>(
      participating_requesters(index->instance(), p));
  auto characteristic = [index, active](std::span<const NodeId> subset) {
    return index->improvement_over(*active, subset);
  };
  return CoalitionGame(std::move(players), std::move(characteristic));
}

nlohmann::json allocation_to_json(const ShapleyAllocation& allocation,
                                  const DirectedGraph& graph) {
  nlohmann::json out;
  out["method"] = to_string(allocation.method);
  out["K"] = allocation.sample_count;
  out["delta"] = 1.0 - allocation.confidence;
  out["error_bound"] = allocation.error_bound;
  nlohmann::json shares = nlohmann::json::object();
  for (const auto& [player, share] : allocation.shares)
    shares[graph.display_label(player)] = share;
  out["shares"] = std::move(shares);
  nlohmann::json rewards = nlohmann::json::object();
  for (const auto& [player, reward] : allocation.rewards)
    rewards[graph.display_label(player)] = reward;
  out["rewards"] = std::move(rewards);
  out["total_improvement"] = allocation.total_value;
  return out;
}

}  // namespace vispricer
