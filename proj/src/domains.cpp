#include "autohd/domains.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "autohd/blocksworld.hpp"
#include "autohd/cube.hpp"
#include "autohd/game24.hpp"

namespace autohd {

using nlohmann::json;

std::string state_key(DomainId domain, const StatePayload& payload) {
  switch (domain) {
    case DomainId::blocksworld: return bw_key(std::get<BlocksState>(payload));
    case DomainId::game24: return g24_key(std::get<Game24State>(payload));
    case DomainId::cube2x2: return cube_key(std::get<CubeState>(payload));
  }
  return "";
}

EncodedState encode_payload(DomainId domain, StatePayload payload) {
  EncodedState s;
  s.domain = domain;
  s.key = state_key(domain, payload);
  s.payload = std::move(payload);
  return s;
}

EncodedState encode_state(const BlocksState& state) {
  return encode_payload(DomainId::blocksworld, state);
}
EncodedState encode_state(const Game24State& state) {
  return encode_payload(DomainId::game24, state);
}
EncodedState encode_state(const CubeState& state) {
  return encode_payload(DomainId::cube2x2, state);
}

bool goal_satisfied(const EncodedState& state, const GoalSpec& goal) {
  switch (state.domain) {
    case DomainId::blocksworld:
      return bw_goal_satisfied(std::get<BlocksState>(state.payload), std::get<BwGoal>(goal));
    case DomainId::game24:
      return g24_is_goal(std::get<Game24State>(state.payload)) &&
             std::get<Game24Goal>(goal).target == Rational(24);
    case DomainId::cube2x2:
      return cube_is_solved(std::get<CubeState>(state.payload));
  }
  return false;
}

WorldModel ground_truth_model(DomainId domain, CubeMoveSet move_set) {
  WorldModel model;
  model.mode = WorldModel::Mode::ground_truth;
  switch (domain) {
    case DomainId::blocksworld:
      model.actions_fn = [](const EncodedState& s) {
        std::vector<EncodedAction> out;
        for (const BwAction& a : bw_actions(std::get<BlocksState>(s.payload)))
          out.push_back({DomainId::blocksworld, a});
        return out;
      };
      model.transition_fn = [](const EncodedState& s, const EncodedAction& a) {
        return std::optional<EncodedState>(encode_state(
            bw_apply(std::get<BlocksState>(s.payload), std::get<BwAction>(a.payload))));
      };
      break;
    case DomainId::game24:
      model.actions_fn = [](const EncodedState& s) {
        std::vector<EncodedAction> out;
        for (const Game24Action& a : g24_actions(std::get<Game24State>(s.payload)))
          out.push_back({DomainId::game24, a});
        return out;
      };
      model.transition_fn = [](const EncodedState& s, const EncodedAction& a) {
        return std::optional<EncodedState>(encode_state(
            g24_apply(std::get<Game24State>(s.payload), std::get<Game24Action>(a.payload))));
      };
      break;
    case DomainId::cube2x2:
      model.actions_fn = [move_set](const EncodedState&) {
        std::vector<EncodedAction> out;
        for (const CubeMove& m : cube_moves(move_set)) out.push_back({DomainId::cube2x2, m});
        return out;
      };
      model.transition_fn = [](const EncodedState& s, const EncodedAction& a) {
        return std::optional<EncodedState>(encode_state(
            cube_apply(std::get<CubeState>(s.payload), std::get<CubeMove>(a.payload))));
      };
      break;
  }
  return model;
}

std::string action_text(const EncodedAction& action) {
  switch (action.domain) {
    case DomainId::blocksworld: return bw_render_action(std::get<BwAction>(action.payload));
    case DomainId::game24: return g24_render_action(std::get<Game24Action>(action.payload));
    case DomainId::cube2x2: return cube_render_move(std::get<CubeMove>(action.payload));
  }
  return "";
}

EncodedAction action_from_text(DomainId domain, const std::string& text) {
  switch (domain) {
    case DomainId::blocksworld:
      return {domain, bw_parse_action(text)};
    case DomainId::game24: {
      auto parsed = g24_parse_action(text);
      if (!parsed) throw std::invalid_argument("bad game24 action '" + text + "'");
      return {domain, *parsed};
    }
    case DomainId::cube2x2:
      return {domain, cube_parse_move(text)};
  }
  throw std::invalid_argument("bad domain");
}

std::string state_text(const EncodedState& state) {
  switch (state.domain) {
    case DomainId::blocksworld:
      return bw_render_state(std::get<BlocksState>(state.payload));
    case DomainId::game24: {
      const auto& nums = std::get<Game24State>(state.payload).numbers;
      std::ostringstream out;
      out << "[";
      for (size_t i = 0; i < nums.size(); ++i) {
        if (i > 0) out << ", ";
        out << nums[i].str();
      }
      out << "]";
      return out.str();
    }
    case DomainId::cube2x2: {
      const auto& cube = std::get<CubeState>(state.payload);
      std::ostringstream out;
      out << "[";
      for (int i = 0; i < 24; ++i) {
        if (i > 0) out << ",";
        out << static_cast<int>(cube.facelets[i]);
      }
      out << "]";
      return out.str();
    }
  }
  return "";
}

std::string goal_text(const GoalSpec& goal) {
  if (std::holds_alternative<BwGoal>(goal)) return bw_render_goal(std::get<BwGoal>(goal));
  if (std::holds_alternative<Game24Goal>(goal))
    return "[" + std::get<Game24Goal>(goal).target.str() + "]";
  return "each face has a single color";
}

PlanningTask task_from_record(DomainId domain, const std::string& json_line) {
  const json record = json::parse(json_line);
  PlanningTask task;
  task.domain = domain;
  task.instance_id = record.value("id", "");
  switch (domain) {
    case DomainId::blocksworld: {
      task.initial_state = encode_state(bw_parse_state(record.at("init").get<std::string>()));
      task.goal = bw_parse_goal(record.at("goal").get<std::string>());
      if (record.contains("min_steps")) task.optimal_depth = record["min_steps"].get<int>();
      break;
    }
    case DomainId::game24: {
      std::vector<Rational> numbers;
      for (const auto& n : record.at("numbers")) numbers.emplace_back(n.get<std::int64_t>());
      task.initial_state = encode_state(g24_make_state(numbers));
      task.goal = Game24Goal{};
      // Reaching the single number 24 always takes one operation per
      // surplus number.
      task.optimal_depth = static_cast<int>(numbers.size()) - 1;
      break;
    }
    case DomainId::cube2x2: {
      CubeState cube;
      const auto& cells = record.at("state");
      if (cells.size() != 24) throw std::invalid_argument("cube record needs 24 facelets");
      for (size_t i = 0; i < 24; ++i) cube.facelets[i] = cells[i].get<std::uint8_t>();
      cube_check(cube);
      task.initial_state = encode_state(cube);
      task.goal = CubeGoal{};
      if (record.contains("optimal_moves")) task.optimal_depth = record["optimal_moves"].get<int>();
      break;
    }
  }
  return task;
}

std::string record_from_task(const PlanningTask& task, CubeMoveSet move_set) {
  json record;
  record["id"] = task.instance_id;
  switch (task.domain) {
    case DomainId::blocksworld:
      record["init"] = bw_render_state(std::get<BlocksState>(task.initial_state.payload));
      record["goal"] = bw_render_goal(std::get<BwGoal>(task.goal));
      if (task.optimal_depth) record["min_steps"] = *task.optimal_depth;
      break;
    case DomainId::game24: {
      json numbers = json::array();
      for (const Rational& r : std::get<Game24State>(task.initial_state.payload).numbers) {
        if (!r.is_integer())
          throw std::invalid_argument("game24 dataset records hold integers");
        numbers.push_back(r.num());
      }
      record["numbers"] = numbers;
      break;
    }
    case DomainId::cube2x2: {
      json cells = json::array();
      for (std::uint8_t c : std::get<CubeState>(task.initial_state.payload).facelets)
        cells.push_back(static_cast<int>(c));
      record["state"] = cells;
      if (task.optimal_depth) record["optimal_moves"] = *task.optimal_depth;
      record["move_set"] = move_set_name(move_set);
      break;
    }
  }
  return record.dump();
}

std::vector<PlanningTask> load_dataset(DomainId domain, const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open dataset '" + path + "'");
  std::vector<PlanningTask> tasks;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      tasks.push_back(task_from_record(domain, line));
    } catch (const std::exception& e) {
      throw std::runtime_error("dataset '" + path + "' line " + std::to_string(line_no) +
                               ": " + e.what());
    }
  }
  return tasks;
}

void save_dataset(const std::vector<PlanningTask>& tasks, const std::string& path,
                  CubeMoveSet move_set) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write dataset '" + path + "'");
  for (const PlanningTask& task : tasks) out << record_from_task(task, move_set) << "\n";
}

}  // namespace autohd
