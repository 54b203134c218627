#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "autohd/core.hpp"
#include "autohd/heuristics.hpp"

namespace autohd {

enum class Algorithm { greedy_bfs, astar };

Algorithm algorithm_from_name(const std::string& name);
std::string algorithm_name(Algorithm a);

struct SearchConfig {
  Algorithm algorithm = Algorithm::astar;
  int expansion_budget = 600;
  int depth_cap = 20;
  int num_solutions = 1;
  enum class TieBreak { fifo, insertion_order };
  // Both policies order equal keys by a monotone sequence number here; they
  // differ only when re-insertion reorders entries, which best-g pruning
  // already prevents.
  TieBreak tie_break = TieBreak::fifo;
};

// Default budgets: 600 expansions for blocksworld, 200 for game24, 2000 for
// the cube; depth cap min(2 x optimal, domain cap) when the optimum is
// known, domain cap {20, 3, 11} otherwise.
SearchConfig default_config(DomainId domain, std::optional<int> optimal_depth = std::nullopt);
int domain_depth_cap(DomainId domain);
int domain_expansion_budget(DomainId domain);

enum class SearchStatus { solved, budget_exhausted, frontier_empty, depth_capped };

std::string status_name(SearchStatus s);

struct SearchStats {
  long expansions = 0;
  long generations = 0;
  long duplicate_hits = 0;
  long heuristic_faults = 0;
  double wall_time_ms = 0.0;
};

struct SearchResult {
  SearchStatus status = SearchStatus::frontier_empty;
  std::vector<PlanTrace> plans;  // at most num_solutions, discovery order
  SearchStats stats;
};

// One record per expansion, for trace logs and the pop-order properties.
struct ExpansionRecord {
  long iteration = 0;
  std::string state_key;
  int g = 0;
  double h = 0.0;
  double f = 0.0;
  std::string action_in;
};

using ExpansionSink = std::function<void(const ExpansionRecord&)>;

// Greedy BFS: pops the frontier state with the smallest heuristic value,
// ignoring path cost; goals are detected when generated. Visited keys are
// dropped on re-generation.
SearchResult greedy_bfs(const PlanningTask& task, const WorldModel& model,
                        const CompiledHeuristic& h, const SearchConfig& cfg,
                        const ExpansionSink& sink = nullptr);

// A*: pops the smallest f = g + h with FIFO tie-breaking; a state key is
// re-inserted only with strictly smaller g. Goal detection on generation
// follows the greedy variant, which for non-zero heuristics trades away the
// textbook optimality guarantee.
SearchResult astar(const PlanningTask& task, const WorldModel& model,
                   const CompiledHeuristic& h, const SearchConfig& cfg,
                   const ExpansionSink& sink = nullptr);

SearchResult run_search(const PlanningTask& task, const WorldModel& model,
                        const CompiledHeuristic& h, const SearchConfig& cfg,
                        const ExpansionSink& sink = nullptr);

}  // namespace autohd
