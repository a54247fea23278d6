#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fcurp/instance.hpp"

namespace fcurp {

// One instance of the strategy matrix. grid_n and network are echoed into the
// records for aggregation; external_solution names a third-party solution
// file consumed by the "external" strategy.
struct BenchInstance {
  std::string id;
  Instance instance;
  int grid_n = 0;
  std::string network;
  std::optional<std::string> external_solution;
};

// Strategies: milp-node, milp-edge, milp-node-warm, milp-edge-warm,
// tsp-repair, oracle, external. Warm variants are seeded by a tsp-repair run
// on the same instance.
const std::vector<std::string>& known_strategies();

// status holds the solve status name; a strategy that failed to produce a
// result records "error: ..." instead of aborting the suite.
struct BenchRecord {
  std::string instance_id;
  std::string strategy;
  int grid_n = 0;
  std::string network;
  double U = 0;
  double R = 0;
  std::optional<double> cost;
  std::optional<double> lower_bound;
  std::optional<double> gap_percent;
  double wall_time_s = 0;
  std::string status;
  int cuts_added = 0;
};

// One record per (instance, strategy), ordered by instance then strategy as
// given. Every solution is re-verified before its cost is reported; rows
// whose instance fails stage one are recorded as Infeasible for all
// strategies. Heuristic rows copy the best MILP dual bound found for the
// same instance in this run, when any. Instances are distributed across
// workers; results do not depend on the worker count.
std::vector<BenchRecord> run_suite(const std::vector<BenchInstance>& instances,
                                   const std::vector<std::string>& strategies,
                                   double time_limit = 7200, double gap_target = 0.01,
                                   int workers = 1);

// Per (grid_n, network, strategy) summary. Gap statistics cover rows carrying
// a gap; time statistics cover rows where a solve actually ran (status
// Optimal, Feasible, or TimedOut). Absent statistics stay empty, never 0.
struct AggregateRow {
  int grid_n = 0;
  std::string network;
  std::string strategy;
  int records = 0;
  double pct_optimal = 0;
  double pct_infeasible = 0;
  std::optional<double> mean_gap;
  std::optional<double> median_gap;
  std::optional<double> mean_time;
  std::optional<double> median_time;
};

// Pure fold over the records: permuting the input leaves the result
// unchanged. Rows are sorted by (grid_n, network, strategy).
std::vector<AggregateRow> aggregate(const std::vector<BenchRecord>& records);

std::string records_to_csv(const std::vector<BenchRecord>& records);
std::string aggregate_to_csv(const std::vector<AggregateRow>& rows);

}  // namespace fcurp
