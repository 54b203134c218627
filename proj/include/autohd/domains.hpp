#pragma once

#include <string>
#include <vector>

#include "autohd/core.hpp"
#include "autohd/states.hpp"

namespace autohd {

EncodedState encode_state(const BlocksState& state);
EncodedState encode_state(const Game24State& state);
EncodedState encode_state(const CubeState& state);
EncodedState encode_payload(DomainId domain, StatePayload payload);

bool goal_satisfied(const EncodedState& state, const GoalSpec& goal);

// Ground-truth simulators behind the WorldModel interface; deterministic and
// side-effect free. The cube move set is fixed per model instance.
WorldModel ground_truth_model(DomainId domain, CubeMoveSet move_set = CubeMoveSet::full18);

std::string action_text(const EncodedAction& action);
EncodedAction action_from_text(DomainId domain, const std::string& text);

std::string state_key(DomainId domain, const StatePayload& payload);

// "[4, 6]" style rendering for game24, facelet list for cube, predicate
// conjunction for blocksworld; used for prompts and the CLI.
std::string state_text(const EncodedState& state);
std::string goal_text(const GoalSpec& goal);

// ---------------------------------------------------------------------------
// Dataset records (JSON lines, one instance per line):
//   blocksworld: {"id", "init": "<text>", "goal": "<text>", "min_steps": int}
//   game24:      {"id", "numbers": [int x4]}
//   cube2x2:     {"id", "state": [int x24], "optimal_moves": int,
//                 "move_set": "full18"|"urf9" (optional, default full18)}

PlanningTask task_from_record(DomainId domain, const std::string& json_line);
std::string record_from_task(const PlanningTask& task, CubeMoveSet move_set = CubeMoveSet::full18);

std::vector<PlanningTask> load_dataset(DomainId domain, const std::string& path);
void save_dataset(const std::vector<PlanningTask>& tasks, const std::string& path,
                  CubeMoveSet move_set = CubeMoveSet::full18);

}  // namespace autohd
