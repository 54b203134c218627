#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "autohd/states.hpp"

namespace autohd {

// Raised when a state/goal text does not match the phrase grammar. `span`
// carries the offending phrase verbatim.
class BwParseError : public std::runtime_error {
 public:
  BwParseError(const std::string& msg, std::string span)
      : std::runtime_error(msg), span_(std::move(span)) {}
  const std::string& span() const { return span_; }

 private:
  std::string span_;
};

// Raised when the phrases are individually well-formed but jointly
// contradictory (e.g. a block both held and on the table).
class BwConsistencyError : public std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Parses a comma/"and"-separated conjunction of the five predicate phrases:
//   "X is clear", "the hand is empty", "X is on top of Y",
//   "X is on the table", "the hand is holding X" / "X is in the hand".
// Block names are matched case-insensitively and stored lowercase.
BlocksState bw_parse_state(const std::string& text);

// Inverse of bw_parse_state: emits the full predicate conjunction in
// canonical order (clear, hand, on-top-of, on-table; alphabetical within
// each group, "and" before the final phrase).
std::string bw_render_state(const BlocksState& state);

// Goals are partial conjunctions over the same phrase forms (no holding).
BwGoal bw_parse_goal(const std::string& text);
std::string bw_render_goal(const BwGoal& goal);

// Legal actions in deterministic order: by kind (pickup, putdown, stack,
// unstack), then by block name, then by target.
std::vector<BwAction> bw_actions(const BlocksState& state);

// Applies a legal action; throws std::invalid_argument naming the violated
// precondition otherwise.
BlocksState bw_apply(const BlocksState& state, const BwAction& action);

bool bw_goal_satisfied(const BlocksState& state, const BwGoal& goal);

// True iff nothing rests on `block` and it is not held.
bool bw_is_clear(const BlocksState& state, const std::string& block);

// Canonical serialization used as the duplicate-detection key.
std::string bw_key(const BlocksState& state);

// Validates the BlocksState invariants (unique names, no empty stacks);
// throws BwConsistencyError on violation.
void bw_check(const BlocksState& state);

// Action text in the planner's action language, e.g.
// "unstack the red block from on top of the blue block".
std::string bw_render_action(const BwAction& action);
BwAction bw_parse_action(const std::string& text);

}  // namespace autohd
