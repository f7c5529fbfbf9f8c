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

#include "vispricer/experiment.hpp"

#include <algorithm>
#include <cctype>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <map>
#include <numeric>
#include <stdexcept>
#include <string_view>

#include "vispricer/random.hpp"

namespace vispricer {

namespace {

std::string format_double(double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof(buffer), "%.12g", value);
  return buffer;
}

std::string csv_escape(const std::string& field) {
  if (field.find_first_of(",\"\n") == std::string::npos) return field;
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

std::string join_labels(const std::vector<std::string>& labels) {
  std::string joined;
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (i) joined += ';';
    joined += labels[i];
  }
  return joined;
}

std::string sanitize_for_filename(const std::string& name) {
  std::string out;
  for (char c : name)
    out += (std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_') ? c : '_';
  return out.empty() ? std::string("dataset") : out;
}

std::string dataset_name(const std::string& graph_path) {
  return std::filesystem::path(graph_path).stem().string();
}

BetaShape beta_from_json(const nlohmann::json& value, const char* field) {
  if (!value.is_array() || value.size() != 2)
    throw std::invalid_argument(std::string(field) + " must be a [shape_a, shape_b] array");
  return {value[0].get<double>(), value[1].get<double>()};
}

std::int64_t now_ms_since(const std::chrono::steady_clock::time_point& start) {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now() - start)
      .count();
}

}  // namespace

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& doc) {
  ExperimentConfig cfg;
  if (!doc.is_object()) throw std::invalid_argument("config must be a JSON object");
  if (!doc.contains("graph_path"))
    throw std::invalid_argument("config is missing graph_path");
  cfg.graph_path = doc.at("graph_path").get<std::string>();
  if (doc.contains("undirected")) cfg.undirected = doc.at("undirected").get<bool>();
  if (doc.contains("tau")) cfg.tau = doc.at("tau").get<int>();
  if (doc.contains("alpha")) cfg.alpha = doc.at("alpha").get<double>();
  if (doc.contains("budget_list"))
    cfg.budget_list = doc.at("budget_list").get<std::vector<int>>();
  if (doc.contains("epsilon_list"))
    cfg.epsilon_list = doc.at("epsilon_list").get<std::vector<double>>();
  if (doc.contains("gamma")) cfg.gamma = doc.at("gamma").get<double>();
  if (doc.contains("requester_beta"))
    cfg.requester_beta = beta_from_json(doc.at("requester_beta"), "requester_beta");
  if (doc.contains("supplier_beta"))
    cfg.supplier_beta = beta_from_json(doc.at("supplier_beta"), "supplier_beta");
  if (doc.contains("seed")) cfg.seed = doc.at("seed").get<std::uint64_t>();
  if (doc.contains("subroutines")) {
    cfg.subroutines.clear();
    cfg.candidate_subroutines.clear();
    for (const auto& tag : doc.at("subroutines")) {
      const std::string name = tag.get<std::string>();
      constexpr std::string_view kCandidatePrefix = "candidate-";
      if (name.rfind(kCandidatePrefix, 0) == 0)
        cfg.candidate_subroutines.push_back(
            parse_strategy(name.substr(kCandidatePrefix.size())));
      else
        cfg.subroutines.push_back(parse_strategy(name));
    }
  }
  if (doc.contains("shapley_rounds"))
    cfg.shapley_rounds = doc.at("shapley_rounds").get<int>();
  if (doc.contains("shapley_delta"))
    cfg.shapley_delta = doc.at("shapley_delta").get<double>();
  if (doc.contains("output_dir")) cfg.output_dir = doc.at("output_dir").get<std::string>();
  cfg.validate();
  return cfg;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  nlohmann::json doc;
  in >> doc;
  ExperimentConfig cfg = from_json(doc);
  if (const char* env_seed = std::getenv("VISPRICER_SEED")) {
    cfg.seed = std::strtoull(env_seed, nullptr, 10);
  }
  return cfg;
}

nlohmann::json ExperimentConfig::to_json() const {
  nlohmann::json doc;
  doc["graph_path"] = graph_path;
  doc["undirected"] = undirected;
  doc["tau"] = tau;
  doc["alpha"] = alpha;
  doc["budget_list"] = budget_list;
  doc["epsilon_list"] = epsilon_list;
  doc["gamma"] = gamma;
  doc["requester_beta"] = {requester_beta.shape_a, requester_beta.shape_b};
  doc["supplier_beta"] = {supplier_beta.shape_a, supplier_beta.shape_b};
  doc["seed"] = seed;
  std::vector<std::string> tags;
  for (SupplierStrategy s : subroutines) tags.push_back(to_string(s));
  for (SupplierStrategy s : candidate_subroutines)
    tags.push_back("candidate-" + to_string(s));
  doc["subroutines"] = tags;
  doc["shapley_rounds"] = shapley_rounds;
  doc["shapley_delta"] = shapley_delta;
  doc["output_dir"] = output_dir;
  return doc;
}

void ExperimentConfig::validate() const {
  if (graph_path.empty()) throw std::invalid_argument("graph_path must be set");
  if (tau < 1) throw std::invalid_argument("tau must be >= 1");
  if (!(alpha > 0.0) || !(alpha < 1.0))
    throw std::invalid_argument("alpha must lie in (0, 1)");
  if (budget_list.empty()) throw std::invalid_argument("budget_list must be non-empty");
  for (int b : budget_list)
    if (b < 1) throw std::invalid_argument("budgets must be >= 1");
  if (epsilon_list.empty()) throw std::invalid_argument("epsilon_list must be non-empty");
  for (double eps : epsilon_list)
    if (!(eps > 0.0) || !(eps <= 1.0))
      throw std::invalid_argument("epsilons must lie in (0, 1]");
  if (!(gamma > 0.0) || !(gamma < 1.0))
    throw std::invalid_argument("gamma must lie in (0, 1)");
  if (requester_beta.shape_a <= 0.0 || requester_beta.shape_b <= 0.0 ||
      supplier_beta.shape_a <= 0.0 || supplier_beta.shape_b <= 0.0)
    throw std::invalid_argument("beta shapes must be positive");
  if (subroutines.empty() && candidate_subroutines.empty())
    throw std::invalid_argument("subroutines must be non-empty");
  if (shapley_rounds < 1) throw std::invalid_argument("shapley_rounds must be >= 1");
  if (!(shapley_delta > 0.0) || !(shapley_delta <= 1.0))
    throw std::invalid_argument("shapley_delta must lie in (0, 1]");
  if (output_dir.empty()) throw std::invalid_argument("output_dir must be set");
}

DatasetStats dataset_stats(const DirectedGraph& g) {
  DatasetStats stats;
  stats.nodes = g.node_count();
  stats.arcs = g.arc_count();
  for (NodeId u = 0; static_cast<std::size_t>(u) < g.node_count(); ++u)
    for (NodeId v : g.out_neighbors(u))
      if (g.has_edge(v, u)) ++stats.reciprocal_arcs;
  stats.reciprocity = stats.arcs == 0
                          ? 0.0
                          : static_cast<double>(stats.reciprocal_arcs) /
                                static_cast<double>(stats.arcs);
  stats.looks_undirected = stats.arcs > 0 && stats.reciprocal_arcs == stats.arcs;
  return stats;
}

MarketInstance sample_market(const DirectedGraph& g, const ExperimentConfig& cfg) {
  const std::size_t n = g.node_count();
  const std::size_t per_role = static_cast<std::size_t>(
      std::floor(cfg.gamma * static_cast<double>(n)));
  if (per_role < 1)
    throw std::invalid_argument("sample_market: gamma * node_count is below 1");
  if (2 * per_role > n)
    throw std::invalid_argument(
        "sample_market: population too small for two disjoint roles of " +
        std::to_string(per_role) + " users");

  Rng rng(cfg.seed);
  std::vector<NodeId> ids(n);
  std::iota(ids.begin(), ids.end(), NodeId{0});
  for (std::size_t i = 0; i < 2 * per_role; ++i) {
    const std::size_t j = i + static_cast<std::size_t>(rng.next_below(n - i));
    std::swap(ids[i], ids[j]);
  }
  std::vector<NodeId> requesters(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(per_role));
  std::vector<NodeId> suppliers(ids.begin() + static_cast<std::ptrdiff_t>(per_role),
                                ids.begin() + static_cast<std::ptrdiff_t>(2 * per_role));
  std::sort(requesters.begin(), requesters.end());
  std::sort(suppliers.begin(), suppliers.end());

  std::vector<double> requester_vals;
  requester_vals.reserve(per_role);
  for (std::size_t i = 0; i < per_role; ++i)
    requester_vals.push_back(rng.next_beta(cfg.requester_beta.shape_a,
                                           cfg.requester_beta.shape_b));
  std::vector<double> supplier_vals;
  supplier_vals.reserve(per_role);
  for (std::size_t i = 0; i < per_role; ++i)
    supplier_vals.push_back(rng.next_beta(cfg.supplier_beta.shape_a,
                                          cfg.supplier_beta.shape_b));

  return MarketInstance(g, std::move(requesters), std::move(requester_vals),
                        std::move(suppliers), std::move(supplier_vals), cfg.tau,
                        cfg.budget_list.front(), cfg.alpha);
}

std::string runs_csv(std::span<const RunRecord> records) {
  std::string body =
      "dataset,subroutine,epsilon,budget,price_p,price_q,revenue,improvement,"
      "wall_time_ms,chosen_suppliers\n";
  for (const RunRecord& r : records) {
    body += csv_escape(r.dataset);
    body += ',';
    body += to_string(r.subroutine);
    body += ',';
    body += format_double(r.epsilon);
    body += ',';
    body += std::to_string(r.budget);
    body += ',';
    body += format_double(r.price_p);
    body += ',';
    body += format_double(r.price_q);
    body += ',';
    body += format_double(r.revenue);
    body += ',';
    body += std::to_string(r.improvement);
    body += ',';
    body += std::to_string(r.wall_time_ms);
    body += ',';
    body += csv_escape(join_labels(r.chosen_suppliers));
    body += '\n';
  }
  return body;
}

std::string shapley_csv(std::span<const ShapleyRecord> records) {
  std::string body =
      "dataset,subroutine,epsilon,budget,method,rounds,delta,error_bound,"
      "total_improvement,supplier,share,reward\n";
  for (const ShapleyRecord& r : records) {
    body += csv_escape(r.dataset);
    body += ',';
    body += to_string(r.subroutine);
    body += ',';
    body += format_double(r.epsilon);
    body += ',';
    body += std::to_string(r.budget);
    body += ',';
    body += to_string(r.method);
    body += ',';
    body += std::to_string(r.rounds);
    body += ',';
    body += format_double(r.delta);
    body += ',';
    body += format_double(r.error_bound);
    body += ',';
    body += std::to_string(r.total_improvement);
    body += ',';
    body += csv_escape(r.supplier);
    body += ',';
    body += format_double(r.share);
    body += ',';
    body += format_double(r.reward);
    body += '\n';
  }
  return body;
}

namespace {

void append_shapley_rows(std::vector<ShapleyRecord>& rows, const RunRecord& run,
                         const ShapleyAllocation& alloc,
                         const std::map<NodeId, double>& rewards,
                         const DirectedGraph& graph, const ExperimentConfig& cfg) {
  for (const auto& [player, share] : alloc.shares) {
    ShapleyRecord row;
    row.dataset = run.dataset;
    row.subroutine = run.subroutine;
    row.epsilon = run.epsilon;
    row.budget = run.budget;
    row.method = alloc.method;
    row.rounds = alloc.sample_count;
    row.delta = alloc.method == ShapleyMethod::kSampled ? cfg.shapley_delta : 0.0;
    row.error_bound = alloc.error_bound;
    row.total_improvement = alloc.total_value;
    row.supplier = graph.display_label(player);
    row.share = share;
    row.reward = rewards.at(player);
    rows.push_back(std::move(row));
  }
}

void write_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << body;
}

}  // namespace

ExperimentResult run_experiment(const ExperimentConfig& cfg) {
  cfg.validate();
  const DirectedGraph graph = load_edge_list(cfg.graph_path, cfg.undirected);
  const MarketInstance base_instance = sample_market(graph, cfg);
  const std::string dataset = dataset_name(cfg.graph_path);

  ExperimentResult result;
  std::size_t run_index = 0;

  for (int budget : cfg.budget_list) {
    const auto index =
        std::make_shared<const MarketIndex>(base_instance.with_budget(budget));
    // Grid cells first, then candidate searches, in config order.
    struct Cell {
      SupplierStrategy strategy;
      double epsilon;  // 0 marks candidate price search
    };
    std::vector<Cell> cells;
    for (SupplierStrategy strategy : cfg.subroutines)
      for (double eps : cfg.epsilon_list) cells.push_back({strategy, eps});
    for (SupplierStrategy strategy : cfg.candidate_subroutines)
      cells.push_back({strategy, 0.0});

    for (const Cell& cell : cells) {
      RunRecord run;
      run.dataset = dataset;
      run.subroutine = cell.strategy;
      run.epsilon = cell.epsilon;
      run.budget = budget;
      const auto start = std::chrono::steady_clock::now();
      try {
        const PricingSolution solution =
            cell.epsilon == 0.0
                ? candidate_price_search(*index, cell.strategy)
                : discretized_price_search(*index, cell.epsilon, cell.strategy);
        run.wall_time_ms = now_ms_since(start);
        run.price_p = solution.price.p;
        run.price_q = solution.price.q;
        run.revenue = solution.revenue;
        run.improvement =
            index->improvement(solution.price.p, solution.selection.chosen);
        for (NodeId s : solution.selection.chosen)
          run.chosen_suppliers.push_back(graph.display_label(s));

        if (!solution.selection.chosen.empty()) {
          const CoalitionGame game = make_improvement_game(
              index, solution.price.p, solution.selection.chosen);
          if (game.player_count() <= kShapleyExactPlayerLimit) {
            ShapleyAllocation exact = shapley_exact(game);
            exact.rewards = reward_allocation(exact, solution.price.q);
            append_shapley_rows(result.shapley_rows, run, exact, exact.rewards,
                                graph, cfg);
          }
          const PermutationSampler sampler{
              Rng::for_stream(cfg.seed, 0xABCD0000ULL + run_index).next_u64(),
              cfg.shapley_rounds};
          ShapleyAllocation sampled = shapley_sampled(game, sampler, cfg.shapley_delta);
          sampled.rewards = reward_allocation(sampled, solution.price.q);
          append_shapley_rows(result.shapley_rows, run, sampled, sampled.rewards,
                              graph, cfg);
        }
      } catch (const std::exception& err) {
        run.wall_time_ms = now_ms_since(start);
        run.price_p = std::numeric_limits<double>::quiet_NaN();
        run.price_q = std::numeric_limits<double>::quiet_NaN();
        run.revenue = std::numeric_limits<double>::quiet_NaN();
        run.improvement = 0;
        run.chosen_suppliers = {std::string("error: ") + err.what()};
      }
      result.runs.push_back(std::move(run));
      ++run_index;
    }
  }

  std::filesystem::create_directories(cfg.output_dir);
  result.runs_csv_path =
      (std::filesystem::path(cfg.output_dir) / "runs.csv").string();
  result.shapley_csv_path =
      (std::filesystem::path(cfg.output_dir) / "shapley.csv").string();
  result.summary_json_path =
      (std::filesystem::path(cfg.output_dir) / "summary.json").string();
  write_file(result.runs_csv_path, runs_csv(result.runs));
  write_file(result.shapley_csv_path, shapley_csv(result.shapley_rows));

  nlohmann::json summary;
  summary["dataset"] = dataset;
  const DatasetStats stats = dataset_stats(graph);
  summary["nodes"] = stats.nodes;
  summary["arcs"] = stats.arcs;
  summary["config"] = cfg.to_json();
  summary["run_count"] = result.runs.size();
  nlohmann::json best_rows = nlohmann::json::array();
  for (int budget : cfg.budget_list) {
    const RunRecord* best = nullptr;
    for (const RunRecord& r : result.runs)
      if (r.budget == budget && !std::isnan(r.revenue) &&
          (!best || r.revenue > best->revenue))
        best = &r;
    if (best) {
      nlohmann::json row;
      row["budget"] = budget;
      row["subroutine"] = to_string(best->subroutine);
      row["epsilon"] = best->epsilon;
      row["price_p"] = best->price_p;
      row["revenue"] = best->revenue;
      best_rows.push_back(std::move(row));
    }
  }
  summary["best_by_budget"] = std::move(best_rows);
  write_file(result.summary_json_path, summary.dump(2) + "\n");

  emit_plot_data(result.runs, cfg.output_dir);
  return result;
}

std::vector<std::string> emit_plot_data(std::span<const RunRecord> records,
                                        const std::string& output_dir) {
  if (records.empty()) throw std::invalid_argument("emit_plot_data: no records");
  std::filesystem::create_directories(output_dir);
  std::map<std::pair<std::string, int>, std::vector<const RunRecord*>> groups;
  for (const RunRecord& r : records) groups[{r.dataset, r.budget}].push_back(&r);

  std::vector<std::string> paths;
  for (auto& [key, rows] : groups) {
    std::stable_sort(rows.begin(), rows.end(), [](const RunRecord* a, const RunRecord* b) {
      if (a->epsilon != b->epsilon) return a->epsilon < b->epsilon;
      return to_string(a->subroutine) < to_string(b->subroutine);
    });
    std::string body = "epsilon,subroutine,revenue,wall_time_ms\n";
    for (const RunRecord* r : rows) {
      body += format_double(r->epsilon);
      body += ',';
      body += to_string(r->subroutine);
      body += ',';
      body += format_double(r->revenue);
      body += ',';
      body += std::to_string(r->wall_time_ms);
      body += '\n';
    }
    const std::string path =
        (std::filesystem::path(output_dir) /
         ("plot_" + sanitize_for_filename(key.first) + "_b" +
          std::to_string(key.second) + ".csv"))
            .string();
    write_file(path, body);
    paths.push_back(path);
  }
  return paths;
}

}  // namespace vispricer
