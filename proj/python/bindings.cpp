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

#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <memory>

#include "vispricer/experiment.hpp"
#include "vispricer/oracle.hpp"
#include "vispricer/pricing.hpp"
#include "vispricer/shapley.hpp"
#include "vispricer/synthetic.hpp"

namespace py = pybind11;
using namespace vispricer;

namespace {

std::vector<NodeId> to_nodes(const std::vector<int>& ids) {
  return {ids.begin(), ids.end()};
}

}  // namespace

PYBIND11_MODULE(_vispricer, m) {
  m.doc() =
      "Bounded-hop social visibility market: graph queries, posted-price "
      "revenue optimization and Shapley reward division.";

  // ---- graph ----
  py::class_<LoadReport>(m, "LoadReport")
      .def_readonly("data_lines", &LoadReport::data_lines)
      .def_readonly("self_loops_dropped", &LoadReport::self_loops_dropped)
      .def_readonly("duplicate_arcs_dropped", &LoadReport::duplicate_arcs_dropped);

  py::class_<DirectedGraph>(m, "DirectedGraph")
      .def(py::init([](int node_count, const std::vector<std::pair<int, int>>& edges) {
             std::vector<Edge> typed;
             typed.reserve(edges.size());
             for (const auto& [u, v] : edges)
               typed.emplace_back(static_cast<NodeId>(u), static_cast<NodeId>(v));
             return DirectedGraph(static_cast<NodeId>(node_count), typed);
           }),
           py::arg("node_count"), py::arg("edges"))
      .def_property_readonly("node_count", &DirectedGraph::node_count)
      .def_property_readonly("arc_count", &DirectedGraph::arc_count)
      .def("out_neighbors",
           [](const DirectedGraph& g, NodeId u) {
             const auto span = g.out_neighbors(u);
             return std::vector<NodeId>(span.begin(), span.end());
           })
      .def("in_neighbors",
           [](const DirectedGraph& g, NodeId u) {
             const auto span = g.in_neighbors(u);
             return std::vector<NodeId>(span.begin(), span.end());
           })
      .def("has_edge", &DirectedGraph::has_edge)
      .def("display_label", &DirectedGraph::display_label)
      .def_property_readonly("labels", &DirectedGraph::labels);

  py::class_<VisibleSet>(m, "VisibleSet")
      .def_readonly("anchor", &VisibleSet::anchor)
      .def_readonly("radius", &VisibleSet::radius)
      .def_readonly("members", &VisibleSet::members)
      .def("__len__", &VisibleSet::size)
      .def("__contains__", &VisibleSet::contains);

  m.def(
      "load_edge_list",
      [](const std::string& path, bool undirected) {
        LoadReport report;
        DirectedGraph g = load_edge_list(path, undirected, &report);
        return py::make_tuple(std::move(g), report);
      },
      py::arg("path"), py::arg("undirected") = false,
      "Returns (graph, load_report).");
  m.def(
      "bounded_distance",
      [](const DirectedGraph& g, NodeId from, NodeId to, int cap) {
        return bounded_distance(g, from, to, cap);
      },
      py::arg("graph"), py::arg("from_node"), py::arg("to_node"), py::arg("cap"),
      "Hop distance, or None when it exceeds the cap.");
  m.def(
      "visible_set",
      [](const DirectedGraph& g, NodeId anchor, int radius) {
        return visible_set(g, anchor, radius);
      },
      py::arg("graph"), py::arg("anchor"), py::arg("radius"));
  m.def(
      "leveled_visible_sets",
      [](const DirectedGraph& g, NodeId anchor, int max_radius) {
        return leveled_visible_sets(g, anchor, max_radius);
      },
      py::arg("graph"), py::arg("anchor"), py::arg("max_radius"));
  m.def("visibility_score", &visibility_score, py::arg("graph"), py::arg("node"),
        py::arg("tau"));

  // ---- synthetic fixtures ----
  m.def("make_path_graph", &make_path_graph, py::arg("n"));
  m.def("make_star_graph", &make_star_graph, py::arg("leaves"));
  m.def("make_random_digraph", &make_random_digraph, py::arg("n"),
        py::arg("edge_prob"), py::arg("seed"));
  m.def("make_two_community_graph", &make_two_community_graph, py::arg("n1"),
        py::arg("n2"), py::arg("p_in"), py::arg("p_out"), py::arg("seed"));
  m.def(
      "make_uniform_market",
      [](const DirectedGraph& g, int nr, int ns, int tau, int budget, double alpha,
         std::uint64_t seed) {
        return make_uniform_market(g, nr, ns, tau, budget, alpha, seed);
      },
      py::arg("graph"), py::arg("n_requesters"), py::arg("n_suppliers"),
      py::arg("tau"), py::arg("budget"), py::arg("alpha"), py::arg("seed"));

  // ---- market ----
  py::class_<PricePoint>(m, "PricePoint")
      .def(py::init<double, double>(), py::arg("p"), py::arg("q"))
      .def_static("with_alpha", &PricePoint::with_alpha, py::arg("p"), py::arg("alpha"))
      .def_readonly("p", &PricePoint::p)
      .def_readonly("q", &PricePoint::q);

  py::enum_<ImprovementMethod>(m, "ImprovementMethod")
      .value("EXACT_BFS", ImprovementMethod::kExactBfs)
      .value("CLOSED_FORM", ImprovementMethod::kClosedForm);

  py::class_<ImprovementReport>(m, "ImprovementReport")
      .def_readonly("per_requester", &ImprovementReport::per_requester)
      .def_readonly("total", &ImprovementReport::total)
      .def_readonly("method", &ImprovementReport::method);

  py::class_<MarketInstance>(m, "MarketInstance")
      .def(py::init([](const DirectedGraph& g, const std::vector<int>& requesters,
                       const std::vector<double>& requester_valuations,
                       const std::vector<int>& suppliers,
                       const std::vector<double>& supplier_valuations, int tau,
                       int budget, double alpha) {
             return MarketInstance(g, to_nodes(requesters), requester_valuations,
                                   to_nodes(suppliers), supplier_valuations, tau,
                                   budget, alpha);
           }),
           py::arg("graph"), py::arg("requesters"), py::arg("requester_valuations"),
           py::arg("suppliers"), py::arg("supplier_valuations"), py::arg("tau"),
           py::arg("budget"), py::arg("alpha"))
      .def_property_readonly("graph", &MarketInstance::graph,
                             py::return_value_policy::reference_internal)
      .def_property_readonly("requesters",
                             [](const MarketInstance& inst) {
                               const auto span = inst.requesters();
                               return std::vector<NodeId>(span.begin(), span.end());
                             })
      .def_property_readonly("suppliers",
                             [](const MarketInstance& inst) {
                               const auto span = inst.suppliers();
                               return std::vector<NodeId>(span.begin(), span.end());
                             })
      .def("requester_valuation", &MarketInstance::requester_valuation)
      .def("supplier_valuation", &MarketInstance::supplier_valuation)
      .def_property_readonly("tau", &MarketInstance::tau)
      .def_property_readonly("budget", &MarketInstance::budget)
      .def_property_readonly("alpha", &MarketInstance::alpha)
      .def("with_budget", &MarketInstance::with_budget, py::arg("budget"));

  m.def("participating_requesters", &participating_requesters, py::arg("instance"),
        py::arg("p"));
  m.def("potential_suppliers", &potential_suppliers, py::arg("instance"), py::arg("q"));
  m.def(
      "improvement_exact",
      [](const MarketInstance& inst, double p, const std::vector<int>& chosen) {
        return improvement_exact(inst, p, to_nodes(chosen));
      },
      py::arg("instance"), py::arg("p"), py::arg("chosen"));
  m.def(
      "improvement_closed_form",
      [](const MarketInstance& inst, double p, const std::vector<int>& chosen) {
        return improvement_closed_form(inst, p, to_nodes(chosen));
      },
      py::arg("instance"), py::arg("p"), py::arg("chosen"));
  m.def(
      "revenue",
      [](const MarketInstance& inst, PricePoint price, const std::vector<int>& chosen,
         ImprovementMethod method) {
        return revenue(inst, price, to_nodes(chosen), method);
      },
      py::arg("instance"), py::arg("price"), py::arg("chosen"),
      py::arg("method") = ImprovementMethod::kClosedForm);
  m.def(
      "payments",
      [](const MarketInstance& inst, PricePoint price, const std::vector<int>& chosen) {
        return payments(inst, price, to_nodes(chosen));
      },
      py::arg("instance"), py::arg("price"), py::arg("chosen"));
  m.def("supplier_rationality", &supplier_rationality, py::arg("instance"),
        py::arg("price"), py::arg("supplier"));
  m.def("market_from_valuations_csv", &market_from_valuations_csv, py::arg("graph"),
        py::arg("path"), py::arg("tau"), py::arg("budget"), py::arg("alpha"));

  py::class_<MarketIndex, std::shared_ptr<MarketIndex>>(m, "MarketIndex")
      .def(py::init<MarketInstance>(), py::arg("instance"))
      .def_property_readonly("instance", &MarketIndex::instance,
                             py::return_value_policy::reference_internal)
      .def(
          "improvement",
          [](const MarketIndex& index, double p, const std::vector<int>& chosen) {
            return index.improvement(p, to_nodes(chosen));
          },
          py::arg("p"), py::arg("chosen"));

  // ---- pricing ----
  py::enum_<SupplierStrategy>(m, "SupplierStrategy")
      .value("GREEDY", SupplierStrategy::kGreedy)
      .value("BRUTE", SupplierStrategy::kBrute)
      .value("TOPVIS", SupplierStrategy::kTopVis);

  py::class_<SupplierSelection>(m, "SupplierSelection")
      .def_readonly("chosen", &SupplierSelection::chosen)
      .def_readonly("marginal_gains", &SupplierSelection::marginal_gains)
      .def_readonly("final_revenue", &SupplierSelection::final_revenue)
      .def_readonly("price", &SupplierSelection::price);

  py::class_<PriceGrid>(m, "PriceGrid")
      .def_readonly("step", &PriceGrid::step)
      .def_readonly("points", &PriceGrid::points);

  py::class_<PricingSolution>(m, "PricingSolution")
      .def_readonly("price", &PricingSolution::price)
      .def_readonly("selection", &PricingSolution::selection)
      .def_readonly("revenue", &PricingSolution::revenue)
      .def_readonly("search_trace", &PricingSolution::search_trace);

  m.def(
      "greedy_supplier_set",
      [](const MarketIndex& index, PricePoint price, bool lazy) {
        return greedy_supplier_set(index, price, lazy);
      },
      py::arg("index"), py::arg("price"), py::arg("lazy") = false);
  m.def(
      "brute_supplier_set",
      [](const MarketIndex& index, PricePoint price, std::size_t pool_limit) {
        return brute_supplier_set(index, price, pool_limit);
      },
      py::arg("index"), py::arg("price"), py::arg("pool_limit") = kDefaultBrutePoolLimit);
  m.def(
      "topvis_supplier_set",
      [](const MarketIndex& index, PricePoint price) {
        return topvis_supplier_set(index, price);
      },
      py::arg("index"), py::arg("price"));
  m.def("price_grid", &price_grid, py::arg("epsilon"));
  m.def(
      "discretized_price_search",
      [](const MarketIndex& index, double epsilon, SupplierStrategy strategy,
         std::size_t pool_limit) {
        return discretized_price_search(index, epsilon, strategy, pool_limit);
      },
      py::arg("index"), py::arg("epsilon"), py::arg("strategy"),
      py::arg("pool_limit") = kDefaultBrutePoolLimit);
  m.def(
      "candidate_price_search",
      [](const MarketIndex& index, SupplierStrategy strategy, std::size_t pool_limit) {
        return candidate_price_search(index, strategy, pool_limit);
      },
      py::arg("index"), py::arg("strategy"),
      py::arg("pool_limit") = kDefaultBrutePoolLimit);
  m.def(
      "lipschitz_gap_report",
      [](const MarketIndex& index, const std::vector<double>& epsilons,
         SupplierStrategy strategy) {
        std::vector<py::dict> rows;
        for (const GapRow& row : lipschitz_gap_report(index, epsilons, strategy)) {
          py::dict d;
          d["epsilon"] = row.epsilon;
          d["revenue"] = row.revenue;
          d["gap"] = row.gap;
          rows.push_back(std::move(d));
        }
        return rows;
      },
      py::arg("index"), py::arg("epsilons"), py::arg("strategy"));
  m.def(
      "solution_to_json",
      [](const PricingSolution& solution, const DirectedGraph& graph,
         SupplierStrategy strategy, double epsilon) {
        return solution_to_json(solution, graph, strategy, epsilon).dump();
      },
      py::arg("solution"), py::arg("graph"), py::arg("strategy"), py::arg("epsilon"));

  // ---- fair division ----
  py::enum_<ShapleyMethod>(m, "ShapleyMethod")
      .value("EXACT", ShapleyMethod::kExact)
      .value("SAMPLED", ShapleyMethod::kSampled);

  py::class_<CoalitionGame>(m, "CoalitionGame")
      .def(py::init([](const std::vector<int>& players, py::function characteristic) {
             auto fn = [characteristic](std::span<const NodeId> subset) {
               const std::vector<NodeId> arg(subset.begin(), subset.end());
               return characteristic(arg).cast<std::int64_t>();
             };
             return CoalitionGame(to_nodes(players), fn);
           }),
           py::arg("players"), py::arg("characteristic"))
      .def_property_readonly("players", &CoalitionGame::players)
      .def("value",
           [](const CoalitionGame& game, const std::vector<int>& subset) {
             return game.value(to_nodes(subset));
           });

  py::class_<PermutationSampler>(m, "PermutationSampler")
      .def(py::init([](std::uint64_t seed, int rounds) {
             return PermutationSampler{seed, rounds};
           }),
           py::arg("seed"), py::arg("rounds"))
      .def_readonly("seed", &PermutationSampler::seed)
      .def_readonly("rounds", &PermutationSampler::rounds);

  py::class_<ShapleyAllocation>(m, "ShapleyAllocation")
      .def_readonly("shares", &ShapleyAllocation::shares)
      .def_readonly("rewards", &ShapleyAllocation::rewards)
      .def_readonly("method", &ShapleyAllocation::method)
      .def_readonly("sample_count", &ShapleyAllocation::sample_count)
      .def_readonly("error_bound", &ShapleyAllocation::error_bound)
      .def_readonly("confidence", &ShapleyAllocation::confidence)
      .def_readonly("total_value", &ShapleyAllocation::total_value);

  m.def("shapley_exact", &shapley_exact, py::arg("game"));
  m.def("shapley_sampled", &shapley_sampled, py::arg("game"), py::arg("sampler"),
        py::arg("delta"));
  m.def("hoeffding_bound", &hoeffding_bound, py::arg("max_marginal"), py::arg("rounds"),
        py::arg("delta"));
  m.def("reward_allocation", &reward_allocation, py::arg("allocation"), py::arg("q"));
  m.def("standalone_check", &standalone_check, py::arg("game"), py::arg("allocation"));
  m.def(
      "make_improvement_game",
      [](std::shared_ptr<MarketIndex> index, double p, const std::vector<int>& players) {
        return make_improvement_game(std::move(index), p, to_nodes(players));
      },
      py::arg("index"), py::arg("p"), py::arg("players"));

  // ---- experiment harness ----
  py::class_<DatasetStats>(m, "DatasetStats")
      .def_readonly("nodes", &DatasetStats::nodes)
      .def_readonly("arcs", &DatasetStats::arcs)
      .def_readonly("reciprocal_arcs", &DatasetStats::reciprocal_arcs)
      .def_readonly("reciprocity", &DatasetStats::reciprocity)
      .def_readonly("looks_undirected", &DatasetStats::looks_undirected);

  m.def("dataset_stats", &dataset_stats, py::arg("graph"));

  py::class_<ExperimentConfig>(m, "ExperimentConfig")
      .def_static("load", &ExperimentConfig::load, py::arg("path"))
      .def_static(
          "from_json",
          [](const std::string& text) {
            return ExperimentConfig::from_json(nlohmann::json::parse(text));
          },
          py::arg("json_text"))
      .def("to_json", [](const ExperimentConfig& cfg) { return cfg.to_json().dump(); })
      .def_readwrite("graph_path", &ExperimentConfig::graph_path)
      .def_readwrite("seed", &ExperimentConfig::seed)
      .def_readwrite("output_dir", &ExperimentConfig::output_dir);

  m.def("sample_market", &sample_market, py::arg("graph"), py::arg("config"));
  m.def(
      "run_experiment",
      [](const ExperimentConfig& cfg) {
        const ExperimentResult result = run_experiment(cfg);
        py::dict out;
        out["run_count"] = result.runs.size();
        out["shapley_row_count"] = result.shapley_rows.size();
        out["runs_csv"] = result.runs_csv_path;
        out["shapley_csv"] = result.shapley_csv_path;
        out["summary_json"] = result.summary_json_path;
        return out;
      },
      py::arg("config"));
  m.def(
      "run_oracle_checks",
      [](const ExperimentConfig& cfg) {
        std::vector<py::dict> rows;
        for (const OracleCheck& check : run_oracle_checks(cfg)) {
          py::dict d;
          d["name"] = check.name;
          d["pass"] = check.pass;
          d["detail"] = check.detail;
          rows.push_back(std::move(d));
        }
        return rows;
      },
      py::arg("config"));
}
