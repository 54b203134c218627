#include "autohd/search.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <queue>
#include <unordered_map>
#include <unordered_set>

#include "autohd/domains.hpp"

namespace autohd {

namespace {

struct Node {
  EncodedState state;
  int g = 0;
  double h = 0.0;
  int parent = -1;
  std::optional<EncodedAction> action_in;
};

struct QueueEntry {
  double key = 0.0;  // h for greedy, g + h for A*
  long seq = 0;      // insertion order; FIFO among equal keys
  int node = -1;
};

struct EntryOrder {
  bool operator()(const QueueEntry& a, const QueueEntry& b) const {
    if (a.key != b.key) return a.key > b.key;
    return a.seq > b.seq;
  }
};

PlanTrace reconstruct(const std::vector<Node>& arena, int index) {
  PlanTrace trace;
  std::vector<int> chain;
  for (int i = index; i >= 0; i = arena[i].parent) chain.push_back(i);
  std::reverse(chain.begin(), chain.end());
  trace.origin = arena[chain.front()].state;
  for (size_t i = 1; i < chain.size(); ++i) {
    const Node& node = arena[chain[i]];
    trace.steps.emplace_back(*node.action_in, node.state);
  }
  return trace;
}

class SearchRun {
 public:
  SearchRun(const PlanningTask& task, const WorldModel& model, const CompiledHeuristic& h,
            const SearchConfig& cfg, const ExpansionSink& sink)
      : task_(task), model_(model), heuristic_(h), cfg_(cfg), sink_(sink) {}

  SearchResult run() {
    const auto start = std::chrono::steady_clock::now();
    SearchResult result = search();
    result.stats.wall_time_ms =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
            .count();
    return result;
  }

 private:
  bool is_astar() const { return cfg_.algorithm == Algorithm::astar; }

  double node_key(const Node& n) const { return is_astar() ? n.g + n.h : n.h; }

  void push(int index) {
    frontier_.push({node_key(arena_[index]), next_seq_++, index});
  }

  double score_of(const EncodedState& s, SearchStats& stats) {
    dsl::EvalOutcome outcome = heuristic_value(heuristic_, s, task_.goal);
    if (dsl::is_fault(outcome)) {
      ++stats.heuristic_faults;
      return std::numeric_limits<double>::infinity();
    }
    double v = std::get<double>(outcome);
    if (std::isnan(v)) {
      ++stats.heuristic_faults;
      return std::numeric_limits<double>::infinity();
    }
    return v;
  }

  SearchResult search() {
    SearchResult result;
    SearchStats& stats = result.stats;

    if (goal_satisfied(task_.initial_state, task_.goal)) {
      PlanTrace empty;
      empty.origin = task_.initial_state;
      result.plans.push_back(std::move(empty));
      if (static_cast<int>(result.plans.size()) >= cfg_.num_solutions) {
        result.status = SearchStatus::solved;
        return result;
      }
    }

    arena_.push_back({task_.initial_state, 0, score_of(task_.initial_state, stats), -1, {}});
    push(0);
    if (is_astar())
      best_g_[task_.initial_state.key] = 0;
    else
      visited_.insert(task_.initial_state.key);

    bool depth_suppressed = false;
    bool out_of_budget = false;

    while (!frontier_.empty()) {
      const QueueEntry entry = frontier_.top();
      frontier_.pop();
      const Node node = arena_[entry.node];

      if (is_astar()) {
        auto it = best_g_.find(node.state.key);
        if (it != best_g_.end() && node.g > it->second) {
          ++stats.duplicate_hits;  // stale entry superseded by a cheaper path
          continue;
        }
      }
      if (node.g >= cfg_.depth_cap) {
        // All children would exceed the cap, so none are generated.
        depth_suppressed = true;
        continue;
      }
      if (stats.expansions >= cfg_.expansion_budget) {
        out_of_budget = true;
        break;
      }

      ++stats.expansions;
      if (sink_)
        sink_({stats.expansions, node.state.key, node.g, node.h, node.g + node.h,
               node.action_in ? action_text(*node.action_in) : ""});

      SuccessorScores scored = score_successors(node.state, task_.goal, model_, heuristic_);
      stats.heuristic_faults += scored.heuristic_faults;
      for (ScoredSuccessor& succ : scored.items) {
        ++stats.generations;
        const int child_g = node.g + 1;

        if (goal_satisfied(succ.next, task_.goal)) {
          arena_.push_back({succ.next, child_g, succ.value, entry.node, succ.action});
          result.plans.push_back(reconstruct(arena_, static_cast<int>(arena_.size()) - 1));
          if (static_cast<int>(result.plans.size()) >= cfg_.num_solutions) {
            result.status = SearchStatus::solved;
            return result;
          }
          continue;
        }

        if (is_astar()) {
          auto it = best_g_.find(succ.next.key);
          if (it != best_g_.end() && child_g >= it->second) {
            ++stats.duplicate_hits;
            continue;
          }
          best_g_[succ.next.key] = child_g;
        } else {
          if (!visited_.insert(succ.next.key).second) {
            ++stats.duplicate_hits;
            continue;
          }
        }
        arena_.push_back({std::move(succ.next), child_g, succ.value, entry.node, succ.action});
        push(static_cast<int>(arena_.size()) - 1);
      }
    }

    if (!result.plans.empty())
      result.status = SearchStatus::solved;
    else if (out_of_budget)
      result.status = SearchStatus::budget_exhausted;
    else
      result.status = depth_suppressed ? SearchStatus::depth_capped : SearchStatus::frontier_empty;
    return result;
  }

  const PlanningTask& task_;
  const WorldModel& model_;
  const CompiledHeuristic& heuristic_;
  const SearchConfig& cfg_;
  const ExpansionSink& sink_;

  std::vector<Node> arena_;
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, EntryOrder> frontier_;
  std::unordered_map<std::string, int> best_g_;
  std::unordered_set<std::string> visited_;
  long next_seq_ = 0;
};

}  // namespace

Algorithm algorithm_from_name(const std::string& name) {
  if (name == "astar" || name == "a*") return Algorithm::astar;
  if (name == "greedy" || name == "greedy_bfs") return Algorithm::greedy_bfs;
  throw std::invalid_argument("unknown algorithm '" + name + "'");
}

std::string algorithm_name(Algorithm a) {
  return a == Algorithm::astar ? "astar" : "greedy_bfs";
}

std::string status_name(SearchStatus s) {
  switch (s) {
    case SearchStatus::solved: return "solved";
    case SearchStatus::budget_exhausted: return "budget_exhausted";
    case SearchStatus::frontier_empty: return "frontier_empty";
    case SearchStatus::depth_capped: return "depth_capped";
  }
  return "?";
}

int domain_depth_cap(DomainId domain) {
  switch (domain) {
    case DomainId::blocksworld: return 20;
    case DomainId::game24: return 3;
    case DomainId::cube2x2: return 11;
  }
  return 20;
}

int domain_expansion_budget(DomainId domain) {
  switch (domain) {
    case DomainId::blocksworld: return 600;
    case DomainId::game24: return 200;
    case DomainId::cube2x2: return 2000;
  }
  return 600;
}

SearchConfig default_config(DomainId domain, std::optional<int> optimal_depth) {
  SearchConfig cfg;
  cfg.expansion_budget = domain_expansion_budget(domain);
  cfg.depth_cap = domain_depth_cap(domain);
  if (optimal_depth)
    cfg.depth_cap = std::max(1, std::min(cfg.depth_cap, 2 * *optimal_depth));
  return cfg;
}

SearchResult greedy_bfs(const PlanningTask& task, const WorldModel& model,
                        const CompiledHeuristic& h, const SearchConfig& cfg,
                        const ExpansionSink& sink) {
  SearchConfig greedy_cfg = cfg;
  greedy_cfg.algorithm = Algorithm::greedy_bfs;
  return SearchRun(task, model, h, greedy_cfg, sink).run();
}

SearchResult astar(const PlanningTask& task, const WorldModel& model, const CompiledHeuristic& h,
                   const SearchConfig& cfg, const ExpansionSink& sink) {
  SearchConfig astar_cfg = cfg;
  astar_cfg.algorithm = Algorithm::astar;
  return SearchRun(task, model, h, astar_cfg, sink).run();
}

SearchResult run_search(const PlanningTask& task, const WorldModel& model,
                        const CompiledHeuristic& h, const SearchConfig& cfg,
                        const ExpansionSink& sink) {
  return SearchRun(task, model, h, cfg, sink).run();
}

}  // namespace autohd
