#include "autohd/blocksworld.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace autohd {

namespace {

std::string lowercase(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string trim(const std::string& s) {
  size_t a = s.find_first_not_of(" \t\n\r.");
  if (a == std::string::npos) return "";
  size_t b = s.find_last_not_of(" \t\n\r.");
  return s.substr(a, b - a + 1);
}

// Strips "the ... block" decoration down to the bare block name.
std::string strip_block(const std::string& phrase) {
  std::string p = trim(phrase);
  if (p.rfind("the ", 0) == 0) p = p.substr(4);
  const std::string suffix = " block";
  if (p.size() > suffix.size() && p.compare(p.size() - suffix.size(), suffix.size(), suffix) == 0)
    p = p.substr(0, p.size() - suffix.size());
  return trim(p);
}

// Splits the conjunction on commas and the word "and" (both appear in the
// prompt texts, sometimes together as ", and").
std::vector<std::string> split_phrases(const std::string& text) {
  std::vector<std::string> parts;
  std::string cur;
  size_t i = 0;
  while (i < text.size()) {
    if (text[i] == ',') {
      parts.push_back(cur);
      cur.clear();
      ++i;
      continue;
    }
    // " and " as a separator only when outside a phrase keyword context;
    // no predicate phrase contains the bare word "and".
    if ((i == 0 || text[i - 1] == ' ') && text.compare(i, 4, "and ") == 0) {
      parts.push_back(cur);
      cur.clear();
      i += 4;
      continue;
    }
    cur += text[i];
    ++i;
  }
  parts.push_back(cur);
  std::vector<std::string> out;
  for (auto& p : parts) {
    std::string t = trim(p);
    if (!t.empty()) out.push_back(t);
  }
  return out;
}

struct Predicates {
  std::map<std::string, std::string> support;  // block -> lower block | TABLE | HAND
  std::vector<std::string> clear;
  bool hand_empty_stated = false;
  std::optional<std::string> holding;
};

void set_support(Predicates& p, const std::string& block, const std::string& sup) {
  auto it = p.support.find(block);
  if (it != p.support.end() && it->second != sup)
    throw BwConsistencyError("block '" + block + "' has two supports: '" + it->second +
                             "' and '" + sup + "'");
  p.support[block] = sup;
}

Predicates parse_predicates(const std::string& text) {
  Predicates preds;
  for (const std::string& raw : split_phrases(lowercase(text))) {
    const std::string phrase = trim(raw);
    size_t pos;
    if (phrase == "the hand is empty" || phrase == "hand is empty") {
      preds.hand_empty_stated = true;
    } else if ((pos = phrase.find(" is on top of ")) != std::string::npos) {
      std::string upper = strip_block(phrase.substr(0, pos));
      std::string lower = strip_block(phrase.substr(pos + 14));
      if (upper.empty() || lower.empty()) throw BwParseError("malformed on-top-of phrase", phrase);
      set_support(preds, upper, lower);
    } else if ((pos = phrase.find(" is on the table")) != std::string::npos &&
               pos + 16 >= phrase.size()) {
      std::string block = strip_block(phrase.substr(0, pos));
      if (block.empty()) throw BwParseError("malformed on-the-table phrase", phrase);
      set_support(preds, block, kTable);
    } else if ((pos = phrase.find(" is clear")) != std::string::npos && pos + 9 >= phrase.size()) {
      std::string block = strip_block(phrase.substr(0, pos));
      if (block.empty()) throw BwParseError("malformed is-clear phrase", phrase);
      preds.clear.push_back(block);
    } else if (phrase.rfind("the hand is holding ", 0) == 0) {
      std::string block = strip_block(phrase.substr(20));
      if (block.empty()) throw BwParseError("malformed holding phrase", phrase);
      if (preds.holding && *preds.holding != block)
        throw BwConsistencyError("hand holds both '" + *preds.holding + "' and '" + block + "'");
      preds.holding = block;
      set_support(preds, block, "HAND");
    } else if ((pos = phrase.find(" is in the hand")) != std::string::npos &&
               pos + 15 >= phrase.size()) {
      std::string block = strip_block(phrase.substr(0, pos));
      if (block.empty()) throw BwParseError("malformed in-the-hand phrase", phrase);
      if (preds.holding && *preds.holding != block)
        throw BwConsistencyError("hand holds both '" + *preds.holding + "' and '" + block + "'");
      preds.holding = block;
      set_support(preds, block, "HAND");
    } else {
      throw BwParseError("unknown phrase form", phrase);
    }
  }
  if (preds.hand_empty_stated && preds.holding)
    throw BwConsistencyError("hand is both empty and holding '" + *preds.holding + "'");
  return preds;
}

void sort_stacks(BlocksState& s) {
  std::sort(s.stacks.begin(), s.stacks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
}

}  // namespace

std::string domain_name(DomainId id) {
  switch (id) {
    case DomainId::blocksworld: return "blocksworld";
    case DomainId::game24: return "game24";
    case DomainId::cube2x2: return "cube2x2";
  }
  return "?";
}

DomainId domain_from_name(const std::string& name) {
  if (name == "blocksworld") return DomainId::blocksworld;
  if (name == "game24") return DomainId::game24;
  if (name == "cube2x2") return DomainId::cube2x2;
  throw std::invalid_argument("unknown domain '" + name + "'");
}

std::string move_set_name(CubeMoveSet ms) {
  return ms == CubeMoveSet::full18 ? "full18" : "urf9";
}

CubeMoveSet move_set_from_name(const std::string& name) {
  if (name == "full18") return CubeMoveSet::full18;
  if (name == "urf9") return CubeMoveSet::urf9;
  throw std::invalid_argument("unknown cube move set '" + name + "'");
}

void bw_check(const BlocksState& state) {
  std::set<std::string> seen;
  for (const auto& stack : state.stacks) {
    if (stack.empty()) throw BwConsistencyError("empty stack stored");
    for (const auto& b : stack)
      if (!seen.insert(b).second)
        throw BwConsistencyError("block '" + b + "' appears more than once");
  }
  if (state.holding && !seen.insert(*state.holding).second)
    throw BwConsistencyError("held block '" + *state.holding + "' also appears in a stack");
}

BlocksState bw_parse_state(const std::string& text) {
  Predicates preds = parse_predicates(text);

  // Every mentioned block must have a stated support so the configuration is
  // fully determined.
  std::set<std::string> mentioned;
  for (const auto& [b, s] : preds.support) {
    mentioned.insert(b);
    if (s != kTable && s != "HAND") mentioned.insert(s);
  }
  for (const auto& b : preds.clear) mentioned.insert(b);
  for (const auto& b : mentioned)
    if (!preds.support.count(b))
      throw BwConsistencyError("no support stated for block '" + b + "'");

  // Two different blocks on the same lower block is a contradiction.
  std::map<std::string, std::string> above;  // lower -> upper
  for (const auto& [upper, lower] : preds.support) {
    if (lower == kTable || lower == "HAND") continue;
    auto it = above.find(lower);
    if (it != above.end())
      throw BwConsistencyError("blocks '" + it->second + "' and '" + upper +
                               "' both rest on '" + lower + "'");
    above[lower] = upper;
  }

  BlocksState state;
  state.holding = preds.holding;
  std::set<std::string> placed;
  for (const auto& [b, s] : preds.support) {
    if (s != kTable) continue;
    std::vector<std::string> stack{b};
    placed.insert(b);
    std::string top = b;
    while (true) {
      auto it = above.find(top);
      if (it == above.end()) break;
      top = it->second;
      if (placed.count(top)) throw BwConsistencyError("cycle involving block '" + top + "'");
      stack.push_back(top);
      placed.insert(top);
    }
    state.stacks.push_back(std::move(stack));
  }
  if (preds.holding) placed.insert(*preds.holding);
  for (const auto& b : mentioned)
    if (!placed.count(b))
      throw BwConsistencyError("block '" + b + "' is not grounded on the table (cycle?)");

  // The stated predicates must actually hold in the assembled state.
  for (const auto& b : preds.clear) {
    if (state.holding == b)
      throw BwConsistencyError("block '" + b + "' stated clear but is held");
    if (!bw_is_clear(state, b))
      throw BwConsistencyError("block '" + b + "' stated clear but has a block on it");
  }
  sort_stacks(state);
  bw_check(state);
  return state;
}

bool bw_is_clear(const BlocksState& state, const std::string& block) {
  if (state.holding == block) return false;
  for (const auto& stack : state.stacks)
    if (stack.back() == block) return true;
  return false;
}

std::string bw_render_state(const BlocksState& state) {
  std::vector<std::string> phrases;
  std::vector<std::string> clear;
  for (const auto& stack : state.stacks) clear.push_back(stack.back());
  std::sort(clear.begin(), clear.end());
  for (const auto& b : clear) phrases.push_back("the " + b + " block is clear");

  if (state.holding)
    phrases.push_back("the hand is holding the " + *state.holding + " block");
  else
    phrases.push_back("the hand is empty");

  std::vector<std::pair<std::string, std::string>> on;  // (upper, lower)
  std::vector<std::string> on_table;
  for (const auto& stack : state.stacks) {
    on_table.push_back(stack.front());
    for (size_t i = 1; i < stack.size(); ++i) on.emplace_back(stack[i], stack[i - 1]);
  }
  std::sort(on.begin(), on.end());
  std::sort(on_table.begin(), on_table.end());
  for (const auto& [u, l] : on)
    phrases.push_back("the " + u + " block is on top of the " + l + " block");
  for (const auto& b : on_table) phrases.push_back("the " + b + " block is on the table");

  std::ostringstream out;
  for (size_t i = 0; i < phrases.size(); ++i) {
    if (i > 0) out << (i + 1 == phrases.size() ? " and " : ", ");
    out << phrases[i];
  }
  return out.str();
}

BwGoal bw_parse_goal(const std::string& text) {
  Predicates preds = parse_predicates(text);
  if (preds.holding)
    throw BwConsistencyError("goals cannot require a held block");
  BwGoal goal;
  for (const auto& [b, s] : preds.support) goal.required_on.emplace(b, s);
  for (const auto& b : preds.clear) goal.required_clear.insert(b);
  if (preds.hand_empty_stated) goal.required_hand_empty = true;

  // Acyclicity of the on-relation.
  std::map<std::string, std::string> up;
  for (const auto& [u, l] : goal.required_on)
    if (l != kTable) up[u] = l;
  for (const auto& [u, l] : goal.required_on) {
    std::set<std::string> seen{u};
    std::string cur = u;
    while (up.count(cur)) {
      cur = up[cur];
      if (!seen.insert(cur).second)
        throw BwConsistencyError("goal on-relation has a cycle at '" + cur + "'");
    }
  }
  return goal;
}

std::string bw_render_goal(const BwGoal& goal) {
  std::vector<std::string> phrases;
  for (const auto& b : goal.required_clear) phrases.push_back("the " + b + " block is clear");
  if (goal.required_hand_empty.value_or(false)) phrases.push_back("the hand is empty");
  std::vector<std::pair<std::string, std::string>> on(goal.required_on.begin(),
                                                      goal.required_on.end());
  std::sort(on.begin(), on.end());
  for (const auto& [u, l] : on) {
    if (l == kTable)
      phrases.push_back("the " + u + " block is on the table");
    else
      phrases.push_back("the " + u + " block is on top of the " + l + " block");
  }
  std::ostringstream out;
  for (size_t i = 0; i < phrases.size(); ++i) {
    if (i > 0) out << (i + 1 == phrases.size() ? " and " : ", ");
    out << phrases[i];
  }
  return out.str();
}

std::vector<BwAction> bw_actions(const BlocksState& state) {
  std::vector<BwAction> acts;
  std::vector<std::string> clear;
  for (const auto& stack : state.stacks) clear.push_back(stack.back());
  std::sort(clear.begin(), clear.end());

  if (!state.holding) {
    for (const auto& stack : state.stacks)
      if (stack.size() == 1) acts.push_back({BwKind::pickup, stack.front(), std::nullopt});
    std::sort(acts.begin(), acts.end(),
              [](const auto& a, const auto& b) { return a.block < b.block; });
    std::vector<BwAction> unstacks;
    for (const auto& stack : state.stacks)
      if (stack.size() > 1)
        unstacks.push_back({BwKind::unstack, stack.back(), stack[stack.size() - 2]});
    std::sort(unstacks.begin(), unstacks.end(),
              [](const auto& a, const auto& b) { return a.block < b.block; });
    acts.insert(acts.end(), unstacks.begin(), unstacks.end());
  } else {
    acts.push_back({BwKind::putdown, *state.holding, std::nullopt});
    for (const auto& target : clear) acts.push_back({BwKind::stack, *state.holding, target});
  }
  return acts;
}

BlocksState bw_apply(const BlocksState& state, const BwAction& action) {
  BlocksState next = state;
  auto find_stack_of_top = [&](const std::string& block) -> std::vector<std::string>* {
    for (auto& stack : next.stacks)
      if (stack.back() == block) return &stack;
    return nullptr;
  };

  switch (action.kind) {
    case BwKind::pickup: {
      if (next.holding) throw std::invalid_argument("pickup: hand is not empty");
      auto* stack = find_stack_of_top(action.block);
      if (!stack) throw std::invalid_argument("pickup: block '" + action.block + "' is not clear");
      if (stack->size() != 1)
        throw std::invalid_argument("pickup: block '" + action.block + "' is not on the table");
      next.holding = action.block;
      next.stacks.erase(next.stacks.begin() + (stack - next.stacks.data()));
      break;
    }
    case BwKind::unstack: {
      if (next.holding) throw std::invalid_argument("unstack: hand is not empty");
      if (!action.target) throw std::invalid_argument("unstack: missing target");
      auto* stack = find_stack_of_top(action.block);
      if (!stack)
        throw std::invalid_argument("unstack: block '" + action.block + "' is not clear");
      if (stack->size() < 2 || (*stack)[stack->size() - 2] != *action.target)
        throw std::invalid_argument("unstack: block '" + action.block + "' is not on '" +
                                    *action.target + "'");
      next.holding = action.block;
      stack->pop_back();
      break;
    }
    case BwKind::putdown: {
      if (next.holding != action.block)
        throw std::invalid_argument("putdown: hand is not holding '" + action.block + "'");
      next.stacks.push_back({action.block});
      next.holding.reset();
      break;
    }
    case BwKind::stack: {
      if (next.holding != action.block)
        throw std::invalid_argument("stack: hand is not holding '" + action.block + "'");
      if (!action.target) throw std::invalid_argument("stack: missing target");
      auto* stack = find_stack_of_top(*action.target);
      if (!stack)
        throw std::invalid_argument("stack: target '" + *action.target + "' is not clear");
      stack->push_back(action.block);
      next.holding.reset();
      break;
    }
  }
  std::sort(next.stacks.begin(), next.stacks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return next;
}

bool bw_goal_satisfied(const BlocksState& state, const BwGoal& goal) {
  std::map<std::string, std::string> support;
  for (const auto& stack : state.stacks) {
    support[stack.front()] = kTable;
    for (size_t i = 1; i < stack.size(); ++i) support[stack[i]] = stack[i - 1];
  }
  for (const auto& [upper, lower] : goal.required_on) {
    auto it = support.find(upper);
    if (it == support.end() || it->second != lower) return false;
  }
  for (const auto& b : goal.required_clear)
    if (!bw_is_clear(state, b)) return false;
  if (goal.required_hand_empty && *goal.required_hand_empty != !state.holding) return false;
  return true;
}

std::string bw_key(const BlocksState& state) {
  std::ostringstream out;
  out << "h=" << (state.holding ? *state.holding : "-");
  for (const auto& stack : state.stacks) {
    out << "|";
    for (size_t i = 0; i < stack.size(); ++i) {
      if (i > 0) out << ",";
      out << stack[i];
    }
  }
  return out.str();
}

std::string bw_render_action(const BwAction& action) {
  switch (action.kind) {
    case BwKind::pickup: return "pick up the " + action.block + " block";
    case BwKind::putdown: return "put down the " + action.block + " block";
    case BwKind::stack:
      return "stack the " + action.block + " block on top of the " + *action.target + " block";
    case BwKind::unstack:
      return "unstack the " + action.block + " block from on top of the " + *action.target +
             " block";
  }
  return "?";
}

BwAction bw_parse_action(const std::string& text) {
  std::string t = lowercase(trim(text));
  size_t pos;
  if (t.rfind("pick up ", 0) == 0) return {BwKind::pickup, strip_block(t.substr(8)), std::nullopt};
  if (t.rfind("put down ", 0) == 0)
    return {BwKind::putdown, strip_block(t.substr(9)), std::nullopt};
  if (t.rfind("stack ", 0) == 0 && (pos = t.find(" on top of ")) != std::string::npos)
    return {BwKind::stack, strip_block(t.substr(6, pos - 6)), strip_block(t.substr(pos + 11))};
  if (t.rfind("unstack ", 0) == 0 && (pos = t.find(" from on top of ")) != std::string::npos)
    return {BwKind::unstack, strip_block(t.substr(8, pos - 8)), strip_block(t.substr(pos + 16))};
  throw BwParseError("unknown action form", text);
}

}  // namespace autohd
