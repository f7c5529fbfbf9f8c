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

// End-to-end acceptance suite. Each criterion prints one PASS/FAIL line and
// the binary exits non-zero if any selected criterion fails. Run with a
// criterion number (1..9) or with no argument for the whole battery.

#include <algorithm>
#include <bit>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "vispricer/experiment.hpp"
#include "vispricer/pricing.hpp"
#include "vispricer/random.hpp"
#include "vispricer/shapley.hpp"
#include "vispricer/synthetic.hpp"

using namespace vispricer;

namespace {

constexpr double kGreedyFactor = 1.0 - 1.0 / std::numbers::e;

struct Criterion {
  int id;
  std::string name;
  std::function<bool(std::string&)> run;  // fills a detail string
};

MarketInstance small_instance(Rng& rng, int tau, int max_requesters, int max_suppliers,
                              int max_budget, double edge_prob = 0.15) {
  const int n = 8 + static_cast<int>(rng.next_below(18));  // up to 25 nodes
  DirectedGraph g = make_random_digraph(n, edge_prob, rng.next_u64());
  const int nr = 1 + static_cast<int>(rng.next_below(
                         static_cast<std::uint64_t>(max_requesters)));
  const int ns = 1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(
                         std::min(max_suppliers, n - nr - 1))));
  const int budget =
      1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(max_budget)));
  return make_uniform_market(std::move(g), nr, ns, tau, budget, 0.6, rng.next_u64());
}

// --- criterion 1: greedy approximation ratio ------------------------------

bool criterion_greedy_ratio(std::string& detail) {
  Rng rng(100);
  int violations = 0;
  const int trials = 220;
  for (int trial = 0; trial < trials; ++trial) {
    const MarketInstance inst = small_instance(rng, 2, 6, 8, 3);
    const MarketIndex index(inst);
    const PricePoint price = PricePoint::with_alpha(rng.next_unit(), inst.alpha());
    const double greedy = greedy_supplier_set(index, price).final_revenue;
    const double brute = brute_supplier_set(index, price).final_revenue;
    if (greedy < kGreedyFactor * brute - 1e-12 * std::max(1.0, std::abs(brute)))
      ++violations;
  }
  detail = std::to_string(trials) + " seeded instances, " +
           std::to_string(violations) + " violations";
  return violations == 0;
}

// --- criterion 2: monotonicity and submodularity --------------------------

bool criterion_submodularity(std::string& detail) {
  Rng rng(200);
  int violations = 0;
  const int trials = 60;
  for (int trial = 0; trial < trials; ++trial) {
    const MarketInstance inst = small_instance(rng, 2, 5, 6, 3);
    const MarketIndex index(inst);
    const double q = rng.next_unit();
    const double p = q / inst.alpha() <= 1.0 ? q / inst.alpha() : 1.0;
    const std::vector<NodeId> pool = potential_suppliers(inst, inst.alpha() * p);
    const std::vector<NodeId> active = participating_requesters(inst, p);
    const std::size_t m = pool.size();
    std::vector<std::int64_t> value(std::size_t{1} << m, 0);
    std::vector<NodeId> subset;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
      subset.clear();
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1u) subset.push_back(pool[i]);
      value[mask] = index.improvement_over(active, subset);
    }
    for (std::uint32_t small = 0; small < (1u << m); ++small) {
      for (std::uint32_t large = small;; large = (large + 1) | small) {
        if (value[small] > value[large]) ++violations;
        for (std::size_t u = 0; u < m; ++u) {
          if (large >> u & 1u) continue;
          const std::uint32_t bit = 1u << u;
          if (value[(small | bit)] - value[small] <
              value[(large | bit)] - value[large])
            ++violations;
        }
        if (large == (1u << m) - 1u) break;
      }
    }
  }
  detail = std::to_string(trials) +
           " instances checked exhaustively over nested subset pairs, " +
           std::to_string(violations) + " violations";
  return violations == 0;
}

// --- criterion 3: closed form versus exact BFS ----------------------------

bool criterion_closed_vs_exact(std::string& detail) {
  Rng rng(300);
  int tau2_mismatches = 0;
  const int tau2_trials = 520;
  for (int trial = 0; trial < tau2_trials; ++trial) {
    const MarketInstance inst = small_instance(rng, 2, 5, 6, 3);
    const double p = rng.next_unit();
    std::vector<NodeId> chosen;
    for (NodeId s : inst.suppliers())
      if (rng.next_unit() < 0.6) chosen.push_back(s);
    if (improvement_closed_form(inst, p, chosen).total !=
        improvement_exact(inst, p, chosen).total)
      ++tau2_mismatches;
  }
  const bool pass_tau2 = tau2_mismatches == 0;
  std::printf("  %s tau=2 equality on %d random instances (%d mismatches)\n",
              pass_tau2 ? "[pass]" : "[FAIL]", tau2_trials, tau2_mismatches);

  // tau = 3: the closed form must never overshoot, and the criterion demands
  // one constructed witness where it strictly undershoots the BFS route.
  int overshoots = 0;
  bool strict_found = false;
  std::string witness;
  const int tau3_trials = 600;
  Rng rng3(301);
  for (int trial = 0; trial < tau3_trials; ++trial) {
    const MarketInstance inst = small_instance(rng3, 3, 5, 6, 3, 0.20);
    const double p = rng3.next_unit();
    std::vector<NodeId> chosen;
    for (NodeId s : inst.suppliers())
      if (rng3.next_unit() < 0.7) chosen.push_back(s);
    const std::int64_t closed = improvement_closed_form(inst, p, chosen).total;
    const std::int64_t exact = improvement_exact(inst, p, chosen).total;
    if (closed > exact) ++overshoots;
    if (closed < exact) strict_found = true;
  }

  // Targeted construction attempt: chains requester -> ... -> second supplier
  // so an overlay walk can traverse two inserted links, plus an exhaustive
  // sweep of every 4-node digraph, role split and chosen subset at tau = 3.
  long long exhaustive_cases = 0;
  {
    std::vector<Edge> pairs;
    for (NodeId u = 0; u < 4; ++u)
      for (NodeId v = 0; v < 4; ++v)
        if (u != v) pairs.emplace_back(u, v);
    const std::vector<std::pair<std::vector<NodeId>, std::vector<NodeId>>> splits = {
        {{0}, {1}},       {{0}, {1, 2}},   {{0, 1}, {2}},
        {{0, 1}, {2, 3}}, {{0}, {1, 2, 3}}};
    for (std::uint32_t mask = 0; mask < (1u << 12); ++mask) {
      std::vector<Edge> edges;
      for (std::size_t i = 0; i < pairs.size(); ++i)
        if (mask >> i & 1u) edges.push_back(pairs[i]);
      const DirectedGraph g(4, edges);
      for (const auto& [requesters, suppliers] : splits) {
        std::vector<double> pv(requesters.size(), 1.0);
        std::vector<double> qv(suppliers.size(), 0.0);
        const MarketInstance inst(g, requesters, pv, suppliers, qv, 3, 4, 0.6);
        const std::size_t m = suppliers.size();
        for (std::uint32_t pick = 1; pick < (1u << m); ++pick) {
          std::vector<NodeId> chosen;
          for (std::size_t i = 0; i < m; ++i)
            if (pick >> i & 1u) chosen.push_back(suppliers[i]);
          ++exhaustive_cases;
          const std::int64_t closed = improvement_closed_form(inst, 0.5, chosen).total;
          const std::int64_t exact = improvement_exact(inst, 0.5, chosen).total;
          if (closed > exact) ++overshoots;
          if (closed < exact && !strict_found) {
            strict_found = true;
            std::ostringstream w;
            w << "graph mask " << mask << ", chosen mask " << pick;
            witness = w.str();
          }
        }
      }
    }
  }

  const bool pass_bound = overshoots == 0;
  std::printf("  %s tau=3 closed <= exact on %d random + %lld exhaustive cases\n",
              pass_bound ? "[pass]" : "[FAIL]", tau3_trials, exhaustive_cases);
  if (strict_found) {
    std::printf("  [pass] strict tau=3 witness found: %s\n", witness.c_str());
  } else {
    std::printf(
        "  [FAIL] no tau=3 instance with closed < exact exists in the search "
        "space.\n"
        "         Diagnostic: every inserted link starts at a chosen supplier s "
        "and every\n"
        "         active requester r receives the link (s, r) itself, so any "
        "overlay walk\n"
        "         of length <= tau that uses an inserted link leaves from a node "
        "within\n"
        "         tau-1 base hops of some chosen supplier; the radius-(tau-1) "
        "term of the\n"
        "         coverage union therefore already contains it, and the two "
        "improvement\n"
        "         routes coincide for every tau under this link model.\n");
  }
  detail = "tau=2 equality, tau=3 bound, tau=3 strict witness (see sub-lines)";
  return pass_tau2 && pass_bound && strict_found;
}

// --- criterion 4: candidate price optimality ------------------------------

bool criterion_candidate_prices(std::string& detail) {
  Rng rng(400);
  int mismatches = 0;
  const int trials = 110;
  for (int trial = 0; trial < trials; ++trial) {
    const int n = 9 + static_cast<int>(rng.next_below(5));
    DirectedGraph g = make_random_digraph(n, 0.2, rng.next_u64());
    const int nr = 1 + static_cast<int>(rng.next_below(4));
    const int ns = 1 + static_cast<int>(rng.next_below(4));
    // valuations on the millistep lattice with alpha = 0.5 keep every
    // participation threshold on the dense oracle grid
    std::vector<NodeId> ids(static_cast<std::size_t>(n));
    std::iota(ids.begin(), ids.end(), NodeId{0});
    shuffle_span(std::span<NodeId>(ids), rng);
    std::vector<NodeId> requesters(ids.begin(), ids.begin() + nr);
    std::vector<NodeId> suppliers(ids.begin() + nr, ids.begin() + nr + ns);
    std::sort(requesters.begin(), requesters.end());
    std::sort(suppliers.begin(), suppliers.end());
    std::vector<double> pv, qv;
    for (int i = 0; i < nr; ++i)
      pv.push_back(static_cast<double>(rng.next_below(1001)) * 1e-3);
    for (int i = 0; i < ns; ++i)
      qv.push_back(static_cast<double>(rng.next_below(1001)) * 1e-3);
    const int budget = 1 + static_cast<int>(rng.next_below(3));
    const MarketInstance inst(std::move(g), requesters, pv, suppliers, qv, 2, budget,
                              0.5);
    const MarketIndex index(inst);
    const double candidate =
        candidate_price_search(index, SupplierStrategy::kBrute).revenue;
    const double dense =
        discretized_price_search(index, 1e-3, SupplierStrategy::kBrute).revenue;
    if (std::abs(candidate - dense) > 1e-9 * std::max(1.0, std::abs(dense)))
      ++mismatches;
  }
  detail = std::to_string(trials) + " instances against the 1e-3 dense grid, " +
           std::to_string(mismatches) + " mismatches";
  return mismatches == 0;
}

// --- criterion 5: grid refinement dominance -------------------------------

bool criterion_grid_refinement(std::string& detail) {
  Rng rng(500);
  int violations = 0;
  const int trials = 40;
  for (int trial = 0; trial < trials; ++trial) {
    const MarketInstance inst = small_instance(rng, 2, 5, 6, 3);
    const MarketIndex index(inst);
    for (const auto& [coarse, fine] : {std::pair{0.2, 0.1}, std::pair{0.1, 0.05}}) {
      const double rev_coarse =
          discretized_price_search(index, coarse, SupplierStrategy::kBrute).revenue;
      const double rev_fine =
          discretized_price_search(index, fine, SupplierStrategy::kBrute).revenue;
      if (rev_fine < rev_coarse - 1e-12) ++violations;
    }
  }
  detail = std::to_string(trials) + " instances x 2 nested grid pairs, " +
           std::to_string(violations) + " violations";
  return violations == 0;
}

// --- criterion 6: shapley axioms ------------------------------------------

bool criterion_shapley_axioms(std::string& detail) {
  Rng rng(600);
  int violations = 0;
  const int trials = 60;
  for (int trial = 0; trial < trials; ++trial) {
    const int n = 10 + static_cast<int>(rng.next_below(10));
    DirectedGraph g = make_random_digraph(n, 0.2, rng.next_u64());
    const int ns = 2 + static_cast<int>(rng.next_below(5));  // up to 6 players
    const auto index = std::make_shared<const MarketIndex>(
        make_uniform_market(std::move(g), 2, ns, 2, ns, 0.6, rng.next_u64()));
    const double p = rng.next_unit();
    std::vector<NodeId> players(index->instance().suppliers().begin(),
                                index->instance().suppliers().end());
    const CoalitionGame game = make_improvement_game(index, p, players);
    const ShapleyAllocation alloc = shapley_exact(game);
    const std::size_t m = game.player_count();

    double sum = 0.0;
    for (const auto& [player, share] : alloc.shares) sum += share;
    if (std::abs(sum - static_cast<double>(alloc.total_value)) > 1e-9) ++violations;
    if (!standalone_check(game, alloc)) ++violations;

    const std::uint32_t full = (1u << m) - 1u;
    for (std::size_t u = 0; u < m; ++u) {
      // null player: zero share when adding u never changes the value
      bool null_player = true;
      for (std::uint32_t mask = 0; mask <= full && null_player; ++mask) {
        if (mask >> u & 1u) continue;
        if (game.value(mask | (1u << u)) != game.value(mask)) null_player = false;
      }
      if (null_player && alloc.shares.at(game.players()[u]) != 0.0) ++violations;
      // symmetry: interchangeable players earn identical shares
      for (std::size_t w = u + 1; w < m; ++w) {
        bool symmetric = true;
        for (std::uint32_t mask = 0; mask <= full && symmetric; ++mask) {
          if ((mask >> u & 1u) || (mask >> w & 1u)) continue;
          if (game.value(mask | (1u << u)) != game.value(mask | (1u << w)))
            symmetric = false;
        }
        if (symmetric && alloc.shares.at(game.players()[u]) !=
                             alloc.shares.at(game.players()[w]))
          ++violations;
      }
    }
  }
  detail = std::to_string(trials) +
           " games: efficiency, symmetry, null player, stand-alone bound; " +
           std::to_string(violations) + " violations";
  return violations == 0;
}

// --- criterion 7: sampling concentration ----------------------------------

bool criterion_sampling_concentration(std::string& detail) {
  // one fixed 5-player game
  Rng rng(700);
  std::shared_ptr<const MarketIndex> index;
  for (;;) {
    DirectedGraph g = make_random_digraph(18, 0.2, rng.next_u64());
    index = std::make_shared<const MarketIndex>(
        make_uniform_market(std::move(g), 3, 5, 2, 5, 0.6, rng.next_u64()));
    if (index->improvement(0.0, std::vector<NodeId>(
                                    index->instance().suppliers().begin(),
                                    index->instance().suppliers().end())) > 0)
      break;
  }
  std::vector<NodeId> players(index->instance().suppliers().begin(),
                              index->instance().suppliers().end());
  const CoalitionGame game = make_improvement_game(index, 0.0, players);
  const ShapleyAllocation exact = shapley_exact(game);

  const int seeds = 200;
  const double delta = 0.1;
  std::map<NodeId, int> covered;
  double mae_small = 0.0;
  double mae_large = 0.0;
  for (int s = 0; s < seeds; ++s) {
    const ShapleyAllocation k200 =
        shapley_sampled(game, {static_cast<std::uint64_t>(9000 + s), 200}, delta);
    const ShapleyAllocation k800 =
        shapley_sampled(game, {static_cast<std::uint64_t>(9000 + s), 800}, delta);
    for (const auto& [player, share] : exact.shares) {
      const double err = std::abs(k200.shares.at(player) - share);
      if (err <= k200.error_bound) ++covered[player];
      mae_small += err;
      mae_large += std::abs(k800.shares.at(player) - share);
    }
  }
  double min_coverage = 1.0;
  for (const auto& [player, hits] : covered)
    min_coverage = std::min(min_coverage, static_cast<double>(hits) / seeds);
  const double ratio = mae_large / mae_small;
  std::ostringstream d;
  d << "min per-player coverage " << min_coverage << " (need >= " << 1.0 - delta
    << "), MAE(K=800)/MAE(K=200) = " << ratio << " (need <= 0.55)";
  detail = d.str();
  return min_coverage >= 1.0 - delta && ratio <= 0.55;
}

// --- criterion 8: protocol reproduction at benchmark scale -----------------

bool criterion_protocol_scale(std::string& detail) {
  const auto started = std::chrono::steady_clock::now();
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "vispricer_acceptance_protocol";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const DirectedGraph g = make_random_digraph(217, 2672.0 / (217.0 * 216.0), 20260810);
  const std::string graph_path = (dir / "residence_like.txt").string();
  {
    std::ofstream out(graph_path);
    for (NodeId u = 0; static_cast<std::size_t>(u) < g.node_count(); ++u)
      for (NodeId v : g.out_neighbors(u)) out << u << " " << v << "\n";
  }

  ExperimentConfig cfg;
  cfg.graph_path = graph_path;
  cfg.undirected = false;
  cfg.tau = 2;
  cfg.alpha = 0.6;
  cfg.budget_list = {1, 2, 3, 4};
  cfg.epsilon_list = {0.2, 0.1, 0.05, 0.025, 0.0125};
  cfg.gamma = 0.05;
  cfg.requester_beta = {3.0, 6.0};
  cfg.supplier_beta = {6.0, 3.0};
  // This valuation profile prices most sampled markets out of trading (cheap
  // suppliers are rare); the pinned seed draws a market with actual turnover
  // so the ordering checks below bite.
  cfg.seed = 170005;
  cfg.subroutines = {SupplierStrategy::kGreedy, SupplierStrategy::kTopVis,
                     SupplierStrategy::kBrute};
  cfg.shapley_rounds = 200;
  cfg.shapley_delta = 0.1;
  cfg.output_dir = (dir / "out").string();

  const ExperimentResult result = run_experiment(cfg);
  const std::size_t expected_runs =
      cfg.budget_list.size() * cfg.subroutines.size() * cfg.epsilon_list.size();
  bool ok = result.runs.size() == expected_runs;
  double max_revenue = 0.0;
  for (const RunRecord& run : result.runs) {
    if (std::isnan(run.revenue)) ok = false;
    max_revenue = std::max(max_revenue, run.revenue);
  }
  if (max_revenue <= 0.0) ok = false;  // the market must actually trade

  // well-formed CSVs: header plus one line per record
  {
    std::ifstream runs_file(result.runs_csv_path);
    std::string line;
    std::size_t lines = 0;
    while (std::getline(runs_file, line)) ++lines;
    if (lines != result.runs.size() + 1) ok = false;
  }

  // per-price ordering between the three subroutines on every grid
  int ratio_violations = 0;
  const MarketInstance inst = sample_market(g, cfg);
  for (int budget : cfg.budget_list) {
    const MarketIndex index(inst.with_budget(budget));
    for (double eps : cfg.epsilon_list) {
      const PricingSolution brute =
          discretized_price_search(index, eps, SupplierStrategy::kBrute);
      const PricingSolution greedy =
          discretized_price_search(index, eps, SupplierStrategy::kGreedy);
      const PricingSolution topvis =
          discretized_price_search(index, eps, SupplierStrategy::kTopVis);
      if (brute.search_trace.size() != greedy.search_trace.size()) {
        ++ratio_violations;
        continue;
      }
      for (std::size_t i = 0; i < brute.search_trace.size(); ++i) {
        const double rb = brute.search_trace[i].second;
        const double rg = greedy.search_trace[i].second;
        if (rb < rg - 1e-12) ++ratio_violations;
        if (rg < kGreedyFactor * rb - 1e-12) ++ratio_violations;
      }
      // topvis is reported, not ordered
      (void)topvis;
    }
  }
  if (ratio_violations > 0) ok = false;

  const double seconds =
      std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - started)
          .count() /
      1000.0;
  std::ostringstream d;
  d << result.runs.size() << " runs, best revenue " << max_revenue
    << ", per-price ratio violations " << ratio_violations << ", " << seconds
    << " s (budget 600 s)";
  detail = d.str();
  std::filesystem::remove_all(dir);
  return ok && seconds < 600.0;
}

// --- criterion 9: determinism ----------------------------------------------

std::string strip_timing_column(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    const std::size_t last = line.rfind(',');
    const std::size_t second_last = line.rfind(',', last - 1);
    out += line.substr(0, second_last) + line.substr(last) + "\n";
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

bool criterion_determinism(std::string& detail) {
  const std::filesystem::path dir =
      std::filesystem::temp_directory_path() / "vispricer_acceptance_determinism";
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  const DirectedGraph g = make_random_digraph(80, 0.06, 42);
  const std::string graph_path = (dir / "g.txt").string();
  {
    std::ofstream out(graph_path);
    for (NodeId u = 0; static_cast<std::size_t>(u) < g.node_count(); ++u)
      for (NodeId v : g.out_neighbors(u)) out << u << " " << v << "\n";
  }
  ExperimentConfig cfg;
  cfg.graph_path = graph_path;
  cfg.tau = 2;
  cfg.alpha = 0.6;
  cfg.budget_list = {1, 2};
  cfg.epsilon_list = {0.2, 0.1};
  cfg.gamma = 0.1;
  cfg.seed = 777;
  cfg.subroutines = {SupplierStrategy::kGreedy, SupplierStrategy::kBrute};
  cfg.candidate_subroutines = {SupplierStrategy::kBrute};
  cfg.shapley_rounds = 100;
  cfg.shapley_delta = 0.1;

  cfg.output_dir = (dir / "a").string();
  const ExperimentResult first = run_experiment(cfg);
  cfg.output_dir = (dir / "b").string();
  const ExperimentResult second = run_experiment(cfg);

  const bool runs_equal = strip_timing_column(read_file(first.runs_csv_path)) ==
                          strip_timing_column(read_file(second.runs_csv_path));
  const bool shapley_equal =
      read_file(first.shapley_csv_path) == read_file(second.shapley_csv_path);
  detail = std::string("runs.csv ") + (runs_equal ? "identical" : "DIFFER") +
           " modulo timing, shapley.csv " + (shapley_equal ? "identical" : "DIFFER");
  std::filesystem::remove_all(dir);
  return runs_equal && shapley_equal;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {1, "greedy approximation ratio vs exhaustive search", criterion_greedy_ratio},
      {2, "monotone submodular objective", criterion_submodularity},
      {3, "closed-form vs exact improvement", criterion_closed_vs_exact},
      {4, "candidate-price optimality", criterion_candidate_prices},
      {5, "grid refinement dominance", criterion_grid_refinement},
      {6, "shapley axioms", criterion_shapley_axioms},
      {7, "sampling concentration", criterion_sampling_concentration},
      {8, "protocol reproduction at benchmark scale", criterion_protocol_scale},
      {9, "seeded determinism of experiment output", criterion_determinism},
  };

  int selected = 0;
  if (argc > 1) selected = std::atoi(argv[1]);

  bool all_pass = true;
  for (const Criterion& criterion : criteria) {
    if (selected != 0 && criterion.id != selected) continue;
    std::string detail;
    const bool pass = criterion.run(detail);
    std::printf("criterion %d [%s] %s — %s\n", criterion.id, pass ? "PASS" : "FAIL",
                criterion.name.c_str(), detail.c_str());
    std::fflush(stdout);
    all_pass = all_pass && pass;
  }
  return all_pass ? 0 : 1;
}
