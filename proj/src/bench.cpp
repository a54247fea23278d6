#include "fcurp/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <map>
#include <stdexcept>
#include <thread>
#include <tuple>

#include "fcurp/bnb_backend.hpp"
#include "fcurp/errors.hpp"
#include "fcurp/heuristic.hpp"
#include "fcurp/json_io.hpp"
#include "fcurp/milp_model.hpp"
#include "fcurp/oracle.hpp"
#include "fcurp/road.hpp"
#include "fcurp/site_selection.hpp"
#include "fcurp/solve.hpp"
#include "fcurp/verify.hpp"

namespace fcurp {
namespace {

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::optional<double> finite_or_empty(double v) {
  if (std::isfinite(v)) return v;
  return std::nullopt;
}

BenchRecord base_record(const BenchInstance& bi, const std::string& strategy) {
  BenchRecord rec;
  rec.instance_id = bi.id;
  rec.strategy = strategy;
  rec.grid_n = bi.grid_n;
  rec.network = bi.network;
  rec.U = bi.instance.U;
  rec.R = bi.instance.R;
  return rec;
}

// Cost is only reported after the solution passes independent verification.
void fill_from_solution(BenchRecord& rec, const RouteSolution& sol, const RoutingGraph& g,
                        double U, double R) {
  rec.status = to_string(sol.status);
  rec.cuts_added = sol.cuts_added;
  if (sol.bound) rec.lower_bound = finite_or_empty(*sol.bound);
  if (sol.status == SolveStatus::Optimal || sol.status == SolveStatus::Feasible) {
    VerificationReport rep = verify_solution(g, U, R, sol);
    if (!rep.ok()) {
      rec.status = "error: failed verification: " + rep.violations.front();
      return;
    }
    rec.cost = sol.cost;
  }
  if (rec.cost && rec.lower_bound)
    rec.gap_percent = finite_or_empty(gap_percent(*rec.cost, rec.lower_bound));
}

void run_strategy(BenchRecord& rec, const std::string& strategy, const BenchInstance& bi,
                  const RoutingGraph& g, const RouteSolution* heur, double time_limit,
                  double gap_target) {
  double U = bi.instance.U;
  double R = bi.instance.R;
  if (strategy == "oracle") {
    fill_from_solution(rec, brute_force_opt(g, U, R), g, U, R);
    return;
  }
  if (strategy == "external") {
    if (!bi.external_solution) {
      rec.status = "error: no external solution provided";
      return;
    }
    fill_from_solution(rec, load_solution(*bi.external_solution), g, U, R);
    return;
  }
  bool edge = strategy.rfind("milp-edge", 0) == 0;
  MilpModel model = edge ? build_edge_model(g, U, R) : build_node_model(g, U, R);
  bool warm = strategy.size() > 5 && strategy.compare(strategy.size() - 5, 5, "-warm") == 0;
  const RouteSolution* start = warm && heur ? heur : nullptr;
  BnbBackend backend;
  fill_from_solution(rec, solve_with_cuts(model, backend, time_limit, start, gap_target), g, U,
                     R);
}

void process_instance(const BenchInstance& bi, const std::vector<std::string>& strategies,
                      double time_limit, double gap_target, BenchRecord* out) {
  std::optional<RoutingGraph> graph;
  bool stage_one_infeasible = false;
  std::string stage_one_error;
  try {
    DiscretizedRoad dr = discretize_road(bi.instance);
    SiteSelection sel = select_sites(dr, bi.instance.targets);
    graph = make_routing_graph(bi.instance, dr, sel);
  } catch (const UncoverableTarget&) {
    stage_one_infeasible = true;
  } catch (const FrontierExhausted&) {
    stage_one_infeasible = true;
  } catch (const std::exception& e) {
    stage_one_error = e.what();
  }

  bool need_heur = false;
  for (const std::string& s : strategies)
    if (s == "tsp-repair" || s == "milp-node-warm" || s == "milp-edge-warm") need_heur = true;

  std::optional<RouteSolution> heur;
  std::string heur_error;
  double heur_time = 0;
  if (graph && need_heur) {
    auto t0 = std::chrono::steady_clock::now();
    try {
      heur = heuristic_solve(*graph, bi.instance.U, bi.instance.R);
    } catch (const std::exception& e) {
      heur_error = e.what();
    }
    heur_time = seconds_since(t0);
  }

  for (std::size_t k = 0; k < strategies.size(); ++k) {
    BenchRecord& rec = out[k];
    rec = base_record(bi, strategies[k]);
    if (stage_one_infeasible) {
      rec.status = to_string(SolveStatus::Infeasible);
      continue;
    }
    if (!graph) {
      rec.status = "error: " + stage_one_error;
      continue;
    }
    if (strategies[k] == "tsp-repair") {
      if (heur)
        fill_from_solution(rec, *heur, *graph, bi.instance.U, bi.instance.R);
      else
        rec.status = "error: " + heur_error;
      rec.wall_time_s = heur_time;
      continue;
    }
    auto t0 = std::chrono::steady_clock::now();
    try {
      run_strategy(rec, strategies[k], bi, *graph, heur ? &*heur : nullptr, time_limit,
                   gap_target);
    } catch (const std::exception& e) {
      rec.status = std::string("error: ") + e.what();
    }
    rec.wall_time_s = seconds_since(t0);
  }

  // Heuristic rows have no bound of their own; borrow the best MILP bound
  // proved for this instance in this run.
  std::optional<double> best;
  for (std::size_t k = 0; k < strategies.size(); ++k)
    if (strategies[k].rfind("milp", 0) == 0 && out[k].lower_bound)
      if (!best || *out[k].lower_bound > *best) best = out[k].lower_bound;
  if (best)
    for (std::size_t k = 0; k < strategies.size(); ++k) {
      BenchRecord& rec = out[k];
      if (strategies[k] == "tsp-repair" && rec.cost && !rec.lower_bound) {
        rec.lower_bound = best;
        rec.gap_percent = finite_or_empty(gap_percent(*rec.cost, best));
      }
    }
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.10g", v);
  return buf;
}

std::string opt_fmt(const std::optional<double>& v) { return v ? fmt(*v) : std::string(); }

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string quoted = "\"";
  for (char c : s) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  quoted += '"';
  return quoted;
}

}  // namespace

const std::vector<std::string>& known_strategies() {
  static const std::vector<std::string> names = {
      "milp-node", "milp-edge", "milp-node-warm", "milp-edge-warm",
      "tsp-repair", "oracle",    "external"};
  return names;
}

std::vector<BenchRecord> run_suite(const std::vector<BenchInstance>& instances,
                                   const std::vector<std::string>& strategies,
                                   double time_limit, double gap_target, int workers) {
  if (strategies.empty()) throw std::invalid_argument("at least one strategy is required");
  const auto& known = known_strategies();
  for (const std::string& s : strategies)
    if (std::find(known.begin(), known.end(), s) == known.end())
      throw std::invalid_argument("unknown strategy: " + s);

  std::vector<BenchRecord> records(instances.size() * strategies.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= instances.size()) return;
      process_instance(instances[i], strategies, time_limit, gap_target,
                       records.data() + i * strategies.size());
    }
  };
  std::size_t w = std::min<std::size_t>(std::max(workers, 1), std::max<std::size_t>(instances.size(), 1));
  if (w <= 1) {
    work();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(w);
    for (std::size_t i = 0; i < w; ++i) pool.emplace_back(work);
    for (std::thread& t : pool) t.join();
  }
  return records;
}

std::vector<AggregateRow> aggregate(const std::vector<BenchRecord>& records) {
  if (records.empty()) throw std::invalid_argument("aggregate requires at least one record");
  std::map<std::tuple<int, std::string, std::string>, std::vector<const BenchRecord*>> groups;
  for (const BenchRecord& r : records)
    groups[{r.grid_n, r.network, r.strategy}].push_back(&r);

  auto mean_of = [](std::vector<double> v) -> std::optional<double> {
    if (v.empty()) return std::nullopt;
    double sum = 0;
    for (double x : v) sum += x;
    return sum / static_cast<double>(v.size());
  };
  auto median_of = [](std::vector<double> v) -> std::optional<double> {
    if (v.empty()) return std::nullopt;
    std::sort(v.begin(), v.end());
    std::size_t mid = v.size() / 2;
    if (v.size() % 2 == 1) return v[mid];
    return (v[mid - 1] + v[mid]) / 2;
  };

  std::vector<AggregateRow> rows;
  rows.reserve(groups.size());
  for (const auto& [key, recs] : groups) {
    AggregateRow row;
    row.grid_n = std::get<0>(key);
    row.network = std::get<1>(key);
    row.strategy = std::get<2>(key);
    row.records = static_cast<int>(recs.size());
    int n_opt = 0, n_inf = 0;
    std::vector<double> gaps, times;
    for (const BenchRecord* r : recs) {
      if (r->status == to_string(SolveStatus::Optimal)) ++n_opt;
      if (r->status == to_string(SolveStatus::Infeasible)) ++n_inf;
      if (r->gap_percent) gaps.push_back(*r->gap_percent);
      if (r->status == to_string(SolveStatus::Optimal) ||
          r->status == to_string(SolveStatus::Feasible) ||
          r->status == to_string(SolveStatus::TimedOut))
        times.push_back(r->wall_time_s);
    }
    row.pct_optimal = 100.0 * n_opt / row.records;
    row.pct_infeasible = 100.0 * n_inf / row.records;
    row.mean_gap = mean_of(gaps);
    row.median_gap = median_of(gaps);
    row.mean_time = mean_of(times);
    row.median_time = median_of(std::move(times));
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string records_to_csv(const std::vector<BenchRecord>& records) {
  std::string out =
      "instance_id,strategy,grid_n,network,U,R,cost,lower_bound,gap_percent,wall_time_s,status,"
      "cuts_added\n";
  for (const BenchRecord& r : records) {
    out += csv_field(r.instance_id) + ',' + csv_field(r.strategy) + ',' +
           std::to_string(r.grid_n) + ',' + csv_field(r.network) + ',' + fmt(r.U) + ',' +
           fmt(r.R) + ',' + opt_fmt(r.cost) + ',' + opt_fmt(r.lower_bound) + ',' +
           opt_fmt(r.gap_percent) + ',' + fmt(r.wall_time_s) + ',' + csv_field(r.status) + ',' +
           std::to_string(r.cuts_added) + '\n';
  }
  return out;
}

std::string aggregate_to_csv(const std::vector<AggregateRow>& rows) {
  std::string out =
      "grid_n,network,strategy,records,pct_optimal,pct_infeasible,mean_gap,median_gap,mean_time,"
      "median_time\n";
  for (const AggregateRow& r : rows) {
    out += std::to_string(r.grid_n) + ',' + csv_field(r.network) + ',' + csv_field(r.strategy) +
           ',' + std::to_string(r.records) + ',' + fmt(r.pct_optimal) + ',' +
           fmt(r.pct_infeasible) + ',' + opt_fmt(r.mean_gap) + ',' + opt_fmt(r.median_gap) + ',' +
           opt_fmt(r.mean_time) + ',' + opt_fmt(r.median_time) + '\n';
  }
  return out;
}

}  // namespace fcurp
