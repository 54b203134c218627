#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "autohd/core.hpp"
#include "autohd/search.hpp"

namespace autohd {

// ---------------------------------------------------------------------------
// Brute-force oracle

struct OracleResult {
  std::optional<int> optimal_depth;  // nullopt when unsolvable within the cap
  PlanTrace plan;                    // one optimal plan when solved
};

// Iterative-deepening exhaustive search with visited-set pruning; exact
// minimal depth. Independent of the heuristic-guided search path: every
// derived expectation in the test suites comes from here. For game24 the
// expression-tree enumeration cross-checks solvability.
OracleResult oracle_solve(const PlanningTask& task, int cap,
                          CubeMoveSet move_set = CubeMoveSet::full18);

// ---------------------------------------------------------------------------
// Dataset generation

struct DatasetSpec {
  // cube: optimal-depth bucket -> instance count.
  // blocksworld: minimal-plan-length bucket -> instance count (even lengths).
  std::map<int, int> bucket_counts;
  int count = 0;             // game24: number of instances
  int blocks = 4;            // blocksworld block count
  bool include_unsolvable = false;  // game24 mixed-solvability mode
  CubeMoveSet move_set = CubeMoveSet::full18;
  int resample_budget = 2000;  // attempts per instance before giving up
};

std::vector<PlanningTask> gen_dataset(DomainId domain, const DatasetSpec& spec,
                                      std::uint64_t seed);

// ---------------------------------------------------------------------------
// Benchmark runs

struct HeuristicSpec {
  // "builtin:<name>", "file:<path>", "source:<dsl text>", or "zero".
  std::string spec = "zero";
};

CompiledHeuristic resolve_heuristic(const HeuristicSpec& spec, DomainId domain,
                                    const dsl::EvalLimits& limits = {});

struct RunConfig {
  DomainId domain = DomainId::cube2x2;
  std::string dataset_path;
  HeuristicSpec heuristic;
  SearchConfig search;
  bool search_overrides = false;  // false: per-instance defaults from optimal depth
  WorldModel::Mode mode = WorldModel::Mode::ground_truth;
  CubeMoveSet move_set = CubeMoveSet::full18;
  int jobs = 1;
  std::uint64_t seed = 0;
};

struct InstanceOutcome {
  std::string instance_id;
  std::optional<int> optimal_depth;
  bool solved = false;
  bool validated = false;
  int plan_length = 0;
  SearchStats stats;
};

struct Metrics {
  std::string label;
  double accuracy = 0.0;
  std::map<int, double> per_bucket;  // optimal_depth -> accuracy
  std::map<int, int> bucket_sizes;
  double mean_expansions = 0.0;
  double mean_plan_length = 0.0;  // over solved instances
  long fault_total = 0;
  double wall_time_ms = 0.0;
  int instances = 0;
};

struct BenchReport {
  Metrics metrics;
  std::vector<InstanceOutcome> outcomes;
};

// Runs search + plan validation per instance and aggregates; instances are
// independent, so outcomes do not depend on --jobs.
BenchReport run_bench(const RunConfig& cfg, const std::vector<PlanningTask>& tasks);
BenchReport run_bench(const RunConfig& cfg);

// Markdown and CSV tables with deterministic column order; the CSV parses
// back to equal Metrics.
std::string report_markdown(const std::vector<Metrics>& rows);
std::string report_csv(const std::vector<Metrics>& rows);
std::vector<Metrics> parse_report_csv(const std::string& csv);

}  // namespace autohd
