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

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <set>
#include <sstream>

#include "doctest.h"
#include "vispricer/experiment.hpp"
#include "vispricer/oracle.hpp"
#include "vispricer/random.hpp"
#include "vispricer/synthetic.hpp"

using namespace vispricer;

namespace {

struct TempDir {
  std::filesystem::path path;
  TempDir() {
    static int counter = 0;
    path = std::filesystem::temp_directory_path() /
           ("vispricer_bench_" + std::to_string(counter++));
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
};

// Writes a small labeled random digraph to disk so configs can load it.
std::string write_graph_file(const TempDir& dir, const DirectedGraph& g,
                             const std::string& name) {
  const std::string path = (dir.path / name).string();
  std::ofstream out(path);
  for (NodeId u = 0; static_cast<std::size_t>(u) < g.node_count(); ++u)
    for (NodeId v : g.out_neighbors(u)) out << "n" << u << " n" << v << "\n";
  return path;
}

ExperimentConfig small_config(const TempDir& dir, const std::string& graph_path) {
  ExperimentConfig cfg;
  cfg.graph_path = graph_path;
  cfg.undirected = false;
  cfg.tau = 2;
  cfg.alpha = 0.6;
  cfg.budget_list = {1};
  cfg.epsilon_list = {1.0};
  cfg.gamma = 0.1;
  cfg.requester_beta = {6.0, 3.0};  // eager requesters and cheap suppliers so
  cfg.supplier_beta = {2.0, 8.0};   // the sampled markets actually trade
  cfg.seed = 4242;
  cfg.subroutines = {SupplierStrategy::kGreedy};
  cfg.candidate_subroutines = {};
  cfg.shapley_rounds = 20;
  cfg.shapley_delta = 0.1;
  cfg.output_dir = (dir.path / "out").string();
  return cfg;
}

// Removes the wall_time_ms column (second to last) from every CSV line so
// byte comparisons ignore timing.
std::string strip_timing(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line)) {
    const std::size_t last = line.rfind(',');
    const std::size_t second_last = line.rfind(',', last - 1);
    out += line.substr(0, second_last) + line.substr(last);
    out += '\n';
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

}  // namespace

TEST_CASE("beta sampling matches the analytic mean") {
  Rng rng(1234);
  double sum = 0.0;
  const int draws = 10000;
  for (int i = 0; i < draws; ++i) sum += rng.next_beta(3.0, 6.0);
  CHECK(sum / draws == doctest::Approx(1.0 / 3.0).epsilon(0.03));

  Rng rng2(99);
  double sum2 = 0.0;
  for (int i = 0; i < draws; ++i) sum2 += rng2.next_beta(6.0, 3.0);
  CHECK(sum2 / draws == doctest::Approx(2.0 / 3.0).epsilon(0.03));
}

TEST_CASE("sample_market draws disjoint roles of the documented size") {
  const DirectedGraph g = make_random_digraph(217, 0.057, 7);
  ExperimentConfig cfg;
  cfg.graph_path = "unused";
  cfg.gamma = 0.05;
  cfg.seed = 31337;
  const MarketInstance inst = sample_market(g, cfg);
  CHECK(inst.requesters().size() == 10);  // floor(0.05 * 217)
  CHECK(inst.suppliers().size() == 10);
  std::set<NodeId> requesters(inst.requesters().begin(), inst.requesters().end());
  for (NodeId s : inst.suppliers()) CHECK_FALSE(requesters.count(s));
  for (double v : inst.requester_valuations()) {
    CHECK(v >= 0.0);
    CHECK(v <= 1.0);
  }

  SUBCASE("same seed reproduces the market, another seed moves it") {
    const MarketInstance again = sample_market(g, cfg);
    CHECK(std::vector<NodeId>(inst.requesters().begin(), inst.requesters().end()) ==
          std::vector<NodeId>(again.requesters().begin(), again.requesters().end()));
    CHECK(std::vector<double>(inst.requester_valuations().begin(),
                              inst.requester_valuations().end()) ==
          std::vector<double>(again.requester_valuations().begin(),
                              again.requester_valuations().end()));
    cfg.seed = 31338;
    const MarketInstance moved = sample_market(g, cfg);
    const bool same_roles =
        std::vector<NodeId>(inst.requesters().begin(), inst.requesters().end()) ==
        std::vector<NodeId>(moved.requesters().begin(), moved.requesters().end());
    const bool same_vals =
        std::vector<double>(inst.requester_valuations().begin(),
                            inst.requester_valuations().end()) ==
        std::vector<double>(moved.requester_valuations().begin(),
                            moved.requester_valuations().end());
    CHECK_FALSE((same_roles && same_vals));
  }
  SUBCASE("population guard") {
    ExperimentConfig tight = cfg;
    tight.gamma = 0.6;  // two roles of floor(0.6 n) cannot be disjoint
    CHECK_THROWS_AS(sample_market(g, tight), std::invalid_argument);
    const DirectedGraph tiny = make_path_graph(5);
    ExperimentConfig sparse = cfg;
    sparse.gamma = 0.05;  // floor(0.05 * 5) = 0 requesters
    CHECK_THROWS_AS(sample_market(tiny, sparse), std::invalid_argument);
  }
}

TEST_CASE("dataset stats") {
  SUBCASE("triangle loaded undirected") {
    TempDir dir;
    const std::string path = (dir.path / "tri.txt").string();
    {
      std::ofstream out(path);
      out << "a b\nb c\nc a\n";
    }
    const DirectedGraph g = load_edge_list(path, true);
    const DatasetStats stats = dataset_stats(g);
    CHECK(stats.nodes == 3);
    CHECK(stats.arcs == 6);
    CHECK(stats.reciprocity == 1.0);
    CHECK(stats.looks_undirected);
  }
  SUBCASE("empty graph") {
    const DatasetStats stats = dataset_stats(DirectedGraph(0, {}));
    CHECK(stats.nodes == 0);
    CHECK(stats.arcs == 0);
    CHECK(stats.reciprocity == 0.0);
    CHECK_FALSE(stats.looks_undirected);
  }
  SUBCASE("directed path has no reciprocity") {
    const DatasetStats stats = dataset_stats(make_path_graph(4));
    CHECK(stats.arcs == 3);
    CHECK(stats.reciprocal_arcs == 0);
    CHECK_FALSE(stats.looks_undirected);
  }
  SUBCASE("table-scale synthetic fixture") {
    const DirectedGraph g = make_random_digraph(217, 2672.0 / (217.0 * 216.0), 2026);
    const DatasetStats stats = dataset_stats(g);
    CHECK(stats.nodes == 217);
    CHECK(stats.arcs > 2200);
    CHECK(stats.arcs < 3200);
  }
}

TEST_CASE("config json round trip, defaults and env seed override") {
  TempDir dir;
  const std::string cfg_path = (dir.path / "cfg.json").string();
  {
    std::ofstream out(cfg_path);
    out << R"({
      "graph_path": "graph.txt",
      "undirected": true,
      "tau": 3,
      "alpha": 0.5,
      "budget_list": [1, 2],
      "epsilon_list": [0.2, 0.1],
      "gamma": 0.2,
      "requester_beta": [3, 6],
      "supplier_beta": [6, 3],
      "seed": 99,
      "subroutines": ["greedy", "brute", "candidate-brute"],
      "shapley_rounds": 50,
      "shapley_delta": 0.05,
      "output_dir": "results"
    })";
  }
  unsetenv("VISPRICER_SEED");
  ExperimentConfig cfg = ExperimentConfig::load(cfg_path);
  CHECK(cfg.tau == 3);
  CHECK(cfg.alpha == 0.5);
  CHECK(cfg.seed == 99);
  CHECK(cfg.subroutines ==
        std::vector<SupplierStrategy>{SupplierStrategy::kGreedy, SupplierStrategy::kBrute});
  CHECK(cfg.candidate_subroutines ==
        std::vector<SupplierStrategy>{SupplierStrategy::kBrute});
  const ExperimentConfig reparsed = ExperimentConfig::from_json(cfg.to_json());
  CHECK(reparsed.subroutines == cfg.subroutines);
  CHECK(reparsed.candidate_subroutines == cfg.candidate_subroutines);
  CHECK(reparsed.seed == cfg.seed);

  SUBCASE("environment variable overrides the seed") {
    setenv("VISPRICER_SEED", "123456", 1);
    const ExperimentConfig overridden = ExperimentConfig::load(cfg_path);
    CHECK(overridden.seed == 123456);
    unsetenv("VISPRICER_SEED");
  }
  SUBCASE("validation rejects broken fields") {
    nlohmann::json doc = cfg.to_json();
    doc["alpha"] = 1.2;
    CHECK_THROWS_AS(ExperimentConfig::from_json(doc), std::invalid_argument);
    doc = cfg.to_json();
    doc["epsilon_list"] = nlohmann::json::array();
    CHECK_THROWS_AS(ExperimentConfig::from_json(doc), std::invalid_argument);
    doc = cfg.to_json();
    doc["gamma"] = 0.0;
    CHECK_THROWS_AS(ExperimentConfig::from_json(doc), std::invalid_argument);
    doc = cfg.to_json();
    doc.erase("graph_path");
    CHECK_THROWS_AS(ExperimentConfig::from_json(doc), std::invalid_argument);
  }
}

TEST_CASE("run_experiment emits one record per cell and consistent csv files") {
  TempDir dir;
  const DirectedGraph g = make_random_digraph(40, 0.12, 11);
  const std::string graph_path = write_graph_file(dir, g, "g.txt");
  ExperimentConfig cfg = small_config(dir, graph_path);

  SUBCASE("minimal cartesian product gives exactly one record") {
    const ExperimentResult result = run_experiment(cfg);
    REQUIRE(result.runs.size() == 1);
    CHECK(result.runs[0].budget == 1);
    CHECK(result.runs[0].epsilon == 1.0);
    CHECK(std::filesystem::exists(result.runs_csv_path));
    CHECK(std::filesystem::exists(result.shapley_csv_path));
    CHECK(std::filesystem::exists(result.summary_json_path));
  }

  SUBCASE("records satisfy the revenue identity and shapley efficiency") {
    cfg.budget_list = {1, 2};
    cfg.epsilon_list = {0.2, 0.1};
    cfg.subroutines = {SupplierStrategy::kGreedy, SupplierStrategy::kBrute};
    cfg.candidate_subroutines = {SupplierStrategy::kBrute};
    const ExperimentResult result = run_experiment(cfg);
    CHECK(result.runs.size() == 2 * (2 * 2 + 1));
    double best = 0.0;
    for (const RunRecord& run : result.runs) best = std::max(best, run.revenue);
    CHECK(best > 0.0);  // the identity checks below must not ride on zeros
    for (const RunRecord& run : result.runs) {
      CHECK(run.price_q == doctest::Approx(0.6 * run.price_p).epsilon(1e-12));
      const double expected = (1.0 - 0.6) * run.price_p *
                              static_cast<double>(run.improvement);
      CHECK(run.revenue ==
            doctest::Approx(expected).epsilon(1e-9));
    }
    // exact shares per run sum to that run's improvement
    for (const RunRecord& run : result.runs) {
      double share_sum = 0.0;
      bool any = false;
      for (const ShapleyRecord& row : result.shapley_rows) {
        if (row.method != ShapleyMethod::kExact) continue;
        if (row.dataset == run.dataset && row.subroutine == run.subroutine &&
            row.epsilon == run.epsilon && row.budget == run.budget) {
          share_sum += row.share;
          any = true;
        }
      }
      if (any)
        CHECK(share_sum ==
              doctest::Approx(static_cast<double>(run.improvement)).epsilon(1e-9));
    }
  }

  SUBCASE("identical seeds give byte-identical csv bodies modulo timing") {
    cfg.budget_list = {1, 2};
    cfg.subroutines = {SupplierStrategy::kGreedy, SupplierStrategy::kTopVis};
    const ExperimentResult first = run_experiment(cfg);
    const std::string runs_a = read_file(first.runs_csv_path);
    const std::string shapley_a = read_file(first.shapley_csv_path);
    cfg.output_dir = (dir.path / "out2").string();
    const ExperimentResult second = run_experiment(cfg);
    CHECK(strip_timing(runs_a) == strip_timing(read_file(second.runs_csv_path)));
    CHECK(shapley_a == read_file(second.shapley_csv_path));
  }

  SUBCASE("a brute pool beyond the guard leaves an error marker row") {
    const DirectedGraph wide = make_random_digraph(80, 0.05, 13);
    ExperimentConfig big = small_config(dir, write_graph_file(dir, wide, "wide.txt"));
    big.gamma = 0.3;                  // 24 suppliers exceed the enumeration guard
    big.supplier_beta = {1.0, 19.0};  // cheap suppliers so the pool fills up
    big.subroutines = {SupplierStrategy::kBrute};
    const ExperimentResult result = run_experiment(big);
    REQUIRE(result.runs.size() == 1);
    CHECK(std::isnan(result.runs[0].revenue));
    REQUIRE(result.runs[0].chosen_suppliers.size() == 1);
    CHECK(result.runs[0].chosen_suppliers[0].rfind("error:", 0) == 0);
  }
}

TEST_CASE("plot data emission") {
  RunRecord base;
  base.dataset = "demo";
  base.subroutine = SupplierStrategy::kGreedy;
  base.epsilon = 0.1;
  base.budget = 1;
  base.revenue = 1.5;
  base.wall_time_ms = 3;

  SUBCASE("one record, one file, one row") {
    TempDir dir;
    const std::vector<RunRecord> records{base};
    const auto paths = emit_plot_data(records, dir.path.string());
    REQUIRE(paths.size() == 1);
    const std::string body = read_file(paths[0]);
    CHECK(body == "epsilon,subroutine,revenue,wall_time_ms\n0.1,greedy,1.5,3\n");
  }
  SUBCASE("budgets split into files and rows sort by epsilon") {
    TempDir dir;
    RunRecord second = base;
    second.budget = 2;
    RunRecord third = base;
    third.epsilon = 0.05;
    third.subroutine = SupplierStrategy::kBrute;
    const std::vector<RunRecord> records{base, second, third};
    const auto paths = emit_plot_data(records, dir.path.string());
    REQUIRE(paths.size() == 2);
    const std::string body_b1 = read_file(paths[0]);
    CHECK(body_b1.find("0.05,brute") < body_b1.find("0.1,greedy"));
  }
  SUBCASE("empty input is rejected") {
    TempDir dir;
    CHECK_THROWS_AS(emit_plot_data({}, dir.path.string()), std::invalid_argument);
  }
}

TEST_CASE("csv escaping guards commas and quotes in labels") {
  RunRecord r;
  r.dataset = "data,set";
  r.subroutine = SupplierStrategy::kGreedy;
  r.epsilon = 0.5;
  r.budget = 1;
  r.chosen_suppliers = {"weird\"label", "plain"};
  const std::vector<RunRecord> rows{r};
  const std::string csv = runs_csv(rows);
  CHECK(csv.find("\"data,set\"") != std::string::npos);
  CHECK(csv.find("\"weird\"\"label;plain\"") != std::string::npos);
}

TEST_CASE("oracle checks pass on a healthy configuration") {
  TempDir dir;
  const DirectedGraph g = make_random_digraph(60, 0.08, 5);
  const std::string graph_path = write_graph_file(dir, g, "g.txt");
  ExperimentConfig cfg = small_config(dir, graph_path);
  cfg.gamma = 0.1;
  const auto checks = run_oracle_checks(cfg);
  CHECK(checks.size() >= 5);
  for (const OracleCheck& check : checks) {
    INFO(check.name, ": ", check.detail);
    CHECK(check.pass);
  }
}
