#include "autohd/core.hpp"

#include <cmath>
#include <limits>

#include "autohd/domains.hpp"
#include "autohd/heuristics.hpp"

namespace autohd {

SuccessorScores score_successors(const EncodedState& state, const GoalSpec& goal,
                                 const WorldModel& model, const CompiledHeuristic& h) {
  SuccessorScores scores;
  for (const EncodedAction& action : model.actions_fn(state)) {
    std::optional<EncodedState> next = model.transition_fn(state, action);
    if (!next) {
      ++scores.dead_branches;
      continue;
    }
    double value;
    dsl::EvalOutcome outcome = heuristic_value(h, *next, goal);
    if (dsl::is_fault(outcome)) {
      value = std::numeric_limits<double>::infinity();
      ++scores.heuristic_faults;
    } else {
      value = std::get<double>(outcome);
      if (std::isnan(value)) {  // normalized to +inf and counted as a fault
        value = std::numeric_limits<double>::infinity();
        ++scores.heuristic_faults;
      }
    }
    scores.items.push_back({action, std::move(*next), value});
  }
  return scores;
}

ValidationReport validate_plan(const PlanningTask& task, const PlanTrace& trace,
                               const WorldModel& ground_truth) {
  if (trace.origin.key != task.initial_state.key)
    return {false, "trace origin does not match the task's initial state"};

  if (trace.steps.empty()) {
    if (goal_satisfied(task.initial_state, task.goal)) return {true, ""};
    return {false, "no actions, goal unmet"};
  }

  EncodedState current = trace.origin;
  for (size_t i = 0; i < trace.steps.size(); ++i) {
    const auto& [action, recorded] = trace.steps[i];
    const std::vector<EncodedAction> legal = ground_truth.actions_fn(current);
    bool found = false;
    for (const EncodedAction& a : legal)
      if (a == action) found = true;
    if (!found)
      return {false, "step " + std::to_string(i + 1) + ": action '" + action_text(action) +
                         "' is not legal in its predecessor state"};
    std::optional<EncodedState> next = ground_truth.transition_fn(current, action);
    if (!next)
      return {false, "step " + std::to_string(i + 1) + ": transition failed"};
    if (next->key != recorded.key)
      return {false, "step " + std::to_string(i + 1) +
                         ": recorded state does not match the transition"};
    current = *next;
  }
  if (!goal_satisfied(current, task.goal))
    return {false, "goal unmet after " + std::to_string(trace.steps.size()) + " actions"};
  return {true, ""};
}

}  // namespace autohd
