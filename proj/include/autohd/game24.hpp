#pragma once

#include <optional>
#include <string>
#include <vector>

#include "autohd/states.hpp"

namespace autohd {

// Actions enumerate each unordered pair under {+, *} and each ordered pair
// under {-, /} (division omitted when the divisor is zero). Per pair the
// order is +, -, - reversed, *, /, / reversed; duplicate actions (equal
// operands) are emitted once.
std::vector<Game24Action> g24_actions(const Game24State& state);

// Removes the two operands, inserts the exact result and appends
// "a op b = r" to the history. Throws std::invalid_argument for operands not
// in the state or division by zero.
Game24State g24_apply(const Game24State& state, const Game24Action& action);

// True iff 24 is the only number left (exact rational equality).
bool g24_is_goal(const Game24State& state);

Game24State g24_make_state(const std::vector<Rational>& numbers);

std::string g24_key(const Game24State& state);

char g24_op_char(G24Op op);
std::string g24_render_action(const Game24Action& action);
// Parses "a op b" (an optional "= r" suffix is ignored).
std::optional<Game24Action> g24_parse_action(const std::string& text);

// Smallest |24 - v| over every full parenthesization/permutation of the
// remaining numbers under {+, -, *, /}, skipping zero-division branches.
// This exhaustive enumeration is also the solvability oracle: gap zero means
// some expression over the numbers reaches 24 exactly.
double g24_min_expr_gap(const std::vector<Rational>& numbers);
bool g24_expression_solvable(const std::vector<Rational>& numbers);

}  // namespace autohd
