#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "autohd/states.hpp"

namespace autohd {

struct CompiledHeuristic;

// The planning task five-tuple: states, initial state, goal, and the two
// world-model roles (action proposal and transition), the latter two carried
// by WorldModel.
struct PlanningTask {
  DomainId domain = DomainId::blocksworld;
  EncodedState initial_state;
  GoalSpec goal;
  std::string instance_id;
  std::optional<int> optimal_depth;  // ground-truth minimum plan length when known
};

// A state-action trace: origin plus the (action, resulting state) steps.
// Replaying origin through the actions reproduces each recorded state.
struct PlanTrace {
  EncodedState origin;
  std::vector<std::pair<EncodedAction, EncodedState>> steps;

  const EncodedState& final_state() const {
    return steps.empty() ? origin : steps.back().second;
  }
  int length() const { return static_cast<int>(steps.size()); }
};

// Action proposal and transition, either ground-truth simulators or
// model-backed via the gateway. In model-backed mode a transition may fail
// (dead branch), reported as nullopt.
struct WorldModel {
  enum class Mode { ground_truth, model_backed };

  Mode mode = Mode::ground_truth;
  std::function<std::vector<EncodedAction>(const EncodedState&)> actions_fn;
  std::function<std::optional<EncodedState>(const EncodedState&, const EncodedAction&)>
      transition_fn;
};

struct ScoredSuccessor {
  EncodedAction action;
  EncodedState next;
  double value = 0.0;  // +inf when the heuristic faulted
};

struct SuccessorScores {
  std::vector<ScoredSuccessor> items;
  int heuristic_faults = 0;
  int dead_branches = 0;  // model-backed transitions that failed
};

// Scores every successor of `state`, order-stable with actions_fn. Heuristic
// faults never propagate: the successor scores +inf and the fault counter
// increments.
SuccessorScores score_successors(const EncodedState& state, const GoalSpec& goal,
                                 const WorldModel& model, const CompiledHeuristic& h);

struct ValidationReport {
  bool valid = false;
  std::string reason;  // names the first violation when invalid
};

// Checks a trace against ground truth: origin matches the task, every action
// is legal in its predecessor, every recorded state matches the
// deterministic transition, and the final state satisfies the goal.
ValidationReport validate_plan(const PlanningTask& task, const PlanTrace& trace,
                               const WorldModel& ground_truth);

}  // namespace autohd
