#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "autohd/rational.hpp"

namespace autohd {

enum class DomainId { blocksworld, game24, cube2x2 };

std::string domain_name(DomainId id);
DomainId domain_from_name(const std::string& name);

// ---------------------------------------------------------------------------
// Blocksworld

// Stacks are stored bottom-to-top and kept sorted by bottom block name so
// that semantically equal states serialize identically.
struct BlocksState {
  std::vector<std::vector<std::string>> stacks;
  std::optional<std::string> holding;

  bool operator==(const BlocksState& o) const = default;
};

enum class BwKind { pickup, putdown, stack, unstack };

struct BwAction {
  BwKind kind = BwKind::pickup;
  std::string block;
  std::optional<std::string> target;  // present iff kind is stack/unstack

  bool operator==(const BwAction& o) const = default;
};

inline constexpr const char* kTable = "TABLE";

struct BwGoal {
  // (upper, lower) pairs; lower may be kTable.
  std::set<std::pair<std::string, std::string>> required_on;
  std::set<std::string> required_clear;
  std::optional<bool> required_hand_empty;

  bool operator==(const BwGoal& o) const = default;
  bool empty() const {
    return required_on.empty() && required_clear.empty() && !required_hand_empty.has_value();
  }
};

// ---------------------------------------------------------------------------
// Game of 24

struct Game24State {
  std::vector<Rational> numbers;         // kept sorted ascending
  std::vector<std::string> history;      // one "a op b = r" line per applied op

  bool operator==(const Game24State& o) const { return numbers == o.numbers; }
};

enum class G24Op { add, sub, mul, div };

struct Game24Action {
  G24Op op = G24Op::add;
  Rational lhs;
  Rational rhs;

  bool operator==(const Game24Action& o) const = default;
};

// ---------------------------------------------------------------------------
// 2x2 pocket cube

// 24 facelets, 4 per face, face order Upper, Right, Front, Down, Left, Back.
struct CubeState {
  std::array<std::uint8_t, 24> facelets{};

  bool operator==(const CubeState& o) const = default;
};

enum class CubeFace { U, R, F, D, L, B };
enum class CubeTurn { cw90, ccw90, half };

struct CubeMove {
  CubeFace face = CubeFace::U;
  CubeTurn turns = CubeTurn::cw90;

  bool operator==(const CubeMove& o) const = default;
};

enum class CubeMoveSet { full18, urf9 };

std::string move_set_name(CubeMoveSet ms);
CubeMoveSet move_set_from_name(const std::string& name);

// ---------------------------------------------------------------------------
// Encoded wrappers shared across the engine

using StatePayload = std::variant<BlocksState, Game24State, CubeState>;
using ActionPayload = std::variant<BwAction, Game24Action, CubeMove>;

// A domain state plus its canonical key. The key is total and deterministic:
// equal-keyed states are semantically equal.
struct EncodedState {
  DomainId domain = DomainId::blocksworld;
  StatePayload payload;
  std::string key;
};

struct EncodedAction {
  DomainId domain = DomainId::blocksworld;
  ActionPayload payload;

  bool operator==(const EncodedAction& o) const {
    return domain == o.domain && payload == o.payload;
  }
};

struct Game24Goal {
  Rational target{24};
  bool operator==(const Game24Goal& o) const = default;
};
struct CubeGoal {
  bool operator==(const CubeGoal& o) const = default;
};

using GoalSpec = std::variant<BwGoal, Game24Goal, CubeGoal>;

}  // namespace autohd
