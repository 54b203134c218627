#include "autohd/heuristics.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <stdexcept>

#include "autohd/blocksworld.hpp"
#include "autohd/cube.hpp"
#include "autohd/game24.hpp"

namespace autohd {

namespace {

constexpr const char* kBwBuiltin = "bw_misplaced_plus_distance";
constexpr const char* kG24Builtin = "g24_min_expr_gap";
constexpr const char* kCubeBuiltin = "cube_nonuniform_faces";

struct BwRow {
  std::string support;
  double height = 0.0;
};

// Current relational table: every block, support in {TABLE, HAND, block},
// height 0 on the table or in the hand, stack index otherwise.
std::map<std::string, BwRow> bw_current_rows(const BlocksState& state) {
  std::map<std::string, BwRow> rows;
  for (const auto& stack : state.stacks)
    for (size_t i = 0; i < stack.size(); ++i)
      rows[stack[i]] = {i == 0 ? kTable : stack[i - 1], static_cast<double>(i)};
  if (state.holding) rows[*state.holding] = {"HAND", 0.0};
  return rows;
}

// Goal heights follow the required-on chain down to the table; where the
// chain bottoms out in an unconstrained block, its current height anchors
// the rest.
std::map<std::string, BwRow> bw_goal_rows(const BlocksState& state, const BwGoal& goal) {
  const auto current = bw_current_rows(state);
  std::map<std::string, std::string> wanted;
  for (const auto& [upper, lower] : goal.required_on) wanted[upper] = lower;

  std::map<std::string, double> heights;
  // The goal relation is acyclic (checked at parse), so this terminates.
  std::function<double(const std::string&)> height_of = [&](const std::string& block) -> double {
    auto done = heights.find(block);
    if (done != heights.end()) return done->second;
    double h = 0.0;
    auto it = wanted.find(block);
    if (it != wanted.end()) {
      if (it->second != kTable) h = 1.0 + height_of(it->second);
    } else {
      auto cur = current.find(block);
      h = cur != current.end() ? cur->second.height : 0.0;
    }
    heights[block] = h;
    return h;
  };

  std::map<std::string, BwRow> rows;
  for (const auto& [upper, lower] : goal.required_on) rows[upper] = {lower, height_of(upper)};
  return rows;
}

double bw_misplaced_plus_distance_value(const BlocksState& state, const BwGoal& goal) {
  const auto current = bw_current_rows(state);
  const auto wanted = bw_goal_rows(state, goal);
  double total = 0.0;
  for (const auto& [block, want] : wanted) {
    auto it = current.find(block);
    const std::string cur_support = it != current.end() ? it->second.support : "";
    const double cur_height = it != current.end() ? it->second.height : 0.0;
    if (cur_support != want.support) total += 1.0 + std::fabs(cur_height - want.height);
  }
  return total;
}

dsl::Value bw_row_value(const std::string& block, const BwRow& row) {
  return dsl::ValueList{dsl::Symbol{block}, dsl::Symbol{row.support}, row.height};
}

std::uint64_t fnv1a(const std::string& text) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string canonical_source(HeuristicKind kind, const std::string& source, DomainId domain) {
  if (kind == HeuristicKind::builtin) return source;
  auto parsed = dsl::parse_expression(source, domain_bound_names(domain));
  return parsed.ok() ? dsl::pretty_print(parsed.ast) : source;
}

// Unrolled exhaustive enumeration for exactly n numbers in `var`; each
// operation consumes a pair, so three levels cover every 4-number state.
std::string g24_gap_expr(const std::string& var, int n) {
  if (n == 1) return "abs(target - nth(" + var + ", 0))";
  const std::string s = std::to_string(n);
  const std::string idx = "idx" + s, p = "p" + s, i = "i" + s, j = "j" + s, q = "q" + s,
                    a = "a" + s, b = "b" + s, rest = "rest" + s, r = "r" + s, m = "m" + s,
                    next = "xs" + std::to_string(n - 1);
  return "let " + idx + " = range(len(" + var + ")) in "
         "min(flatten(map(" + p + " in flatten(map(" + i + " in " + idx + ", map(" + j +
         " in filter(" + q + " in " + idx + ", " + q + " > " + i + "), list(" + i + ", " + j +
         ")))), "
         "let " + a + " = nth(" + var + ", nth(" + p + ", 0)) in "
         "let " + b + " = nth(" + var + ", nth(" + p + ", 1)) in "
         "let " + rest + " = map(" + m + " in filter(" + q + " in " + idx + ", " + q +
         " != nth(" + p + ", 0) and " + q + " != nth(" + p + ", 1)), nth(" + var + ", " + m +
         ")) in "
         "map(" + r + " in concat(list(" + a + " + " + b + ", " + a + " - " + b + ", " + b +
         " - " + a + ", " + a + " * " + b + "), concat(if " + b + " == 0 then list() else list(" +
         a + " / " + b + "), if " + a + " == 0 then list() else list(" + b + " / " + a + "))), "
         "let " + next + " = append(" + rest + ", " + r + ") in " +
         g24_gap_expr(next, n - 1) + "))))";
}

}  // namespace

std::string stable_hash(const std::string& text) {
  char buf[17];
  std::snprintf(buf, sizeof(buf), "%016llx",
                static_cast<unsigned long long>(fnv1a(text)));
  return std::string(buf);
}

std::vector<std::string> domain_bound_names(DomainId domain) {
  switch (domain) {
    case DomainId::blocksworld: return {"state", "goal"};
    case DomainId::game24: return {"state", "target"};
    case DomainId::cube2x2: return {"state"};
  }
  return {"state"};
}

namespace {

void check_limits(const dsl::EvalLimits& limits) {
  if (limits.step_budget <= 0 || limits.max_collection_size <= 0)
    throw std::invalid_argument("evaluation limits must be positive");
}

}  // namespace

CompileResult parse_program(const std::string& source, DomainId domain,
                            const dsl::EvalLimits& limits, const std::string& description) {
  check_limits(limits);
  CompileResult result;
  auto parsed = dsl::parse_expression(source, domain_bound_names(domain));
  if (!parsed.ok()) {
    result.error = parsed.error;
    return result;
  }
  HeuristicProgram program;
  program.description = description;
  program.kind = HeuristicKind::dsl_source;
  program.source = source;
  program.domain = domain;
  program.id = stable_hash(domain_name(domain) + "\x1f" + "dsl" + "\x1f" +
                           dsl::pretty_print(parsed.ast));
  result.heuristic = CompiledHeuristic{std::move(program), parsed.ast, limits};
  return result;
}

CompiledHeuristic compile(const HeuristicProgram& program, const dsl::EvalLimits& limits) {
  check_limits(limits);
  if (program.kind == HeuristicKind::builtin) {
    if (!is_builtin_name(program.source))
      throw std::invalid_argument("unknown builtin heuristic '" + program.source + "'");
    return CompiledHeuristic{program, nullptr, limits};
  }
  auto parsed = dsl::parse_expression(program.source, domain_bound_names(program.domain));
  if (!parsed.ok())
    throw std::invalid_argument("heuristic program does not parse: " +
                                parsed.error->describe());
  return CompiledHeuristic{program, parsed.ast, limits};
}

const std::vector<std::string>& builtin_names() {
  static const std::vector<std::string> names = {kBwBuiltin, kG24Builtin, kCubeBuiltin};
  return names;
}

bool is_builtin_name(const std::string& name) {
  const auto& names = builtin_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

HeuristicProgram builtin(const std::string& name) {
  HeuristicProgram p;
  p.kind = HeuristicKind::builtin;
  p.source = name;
  if (name == kBwBuiltin) {
    p.domain = DomainId::blocksworld;
    p.description =
        "Counts blocks whose support differs from the goal and adds the "
        "cumulative height differences of those misplaced blocks.";
  } else if (name == kG24Builtin) {
    p.domain = DomainId::game24;
    p.description =
        "Smallest absolute difference between 24 and the results of all "
        "possible arithmetic expressions over the remaining numbers.";
  } else if (name == kCubeBuiltin) {
    p.domain = DomainId::cube2x2;
    p.description = "Number of cube faces that are not a single color.";
  } else {
    throw std::invalid_argument("unknown builtin heuristic '" + name + "'");
  }
  p.id = stable_hash(domain_name(p.domain) + "\x1f" + "builtin" + "\x1f" + name);
  return p;
}

std::string builtin_dsl_source(const std::string& name) {
  if (name == kCubeBuiltin)
    return "sum(map(face in faces(state), if uniform(face) then 0 else 1))";
  if (name == kBwBuiltin)
    return "sum(map(g in goal, sum(map(c in filter(r in state, block(r) == block(g)), "
           "if support(c) == support(g) then 0 else 1 + abs(height(c) - height(g))))))";
  if (name == kG24Builtin)
    return "if len(state) == 1 then " + g24_gap_expr("state", 1) +
           " else if len(state) == 2 then " + g24_gap_expr("state", 2) +
           " else if len(state) == 3 then " + g24_gap_expr("state", 3) + " else " +
           g24_gap_expr("state", 4);
  throw std::invalid_argument("unknown builtin heuristic '" + name + "'");
}

dsl::Bindings dsl_view(const EncodedState& state, const GoalSpec& goal) {
  dsl::Bindings bindings;
  switch (state.domain) {
    case DomainId::cube2x2: {
      const auto& cube = std::get<CubeState>(state.payload);
      dsl::ValueList cells;
      cells.reserve(24);
      for (std::uint8_t c : cube.facelets) cells.push_back(static_cast<double>(c));
      bindings.emplace_back("state", dsl::Value(std::move(cells)));
      break;
    }
    case DomainId::game24: {
      const auto& g24 = std::get<Game24State>(state.payload);
      dsl::ValueList nums;
      nums.reserve(g24.numbers.size());
      for (const Rational& r : g24.numbers) nums.push_back(r.to_double());
      bindings.emplace_back("state", dsl::Value(std::move(nums)));
      const auto& g = std::get<Game24Goal>(goal);
      bindings.emplace_back("target", dsl::Value(g.target.to_double()));
      break;
    }
    case DomainId::blocksworld: {
      const auto& bw = std::get<BlocksState>(state.payload);
      const auto& bw_goal = std::get<BwGoal>(goal);
      dsl::ValueList current;
      for (const auto& [block, row] : bw_current_rows(bw))
        current.push_back(bw_row_value(block, row));
      dsl::ValueList wanted;
      for (const auto& [block, row] : bw_goal_rows(bw, bw_goal))
        wanted.push_back(bw_row_value(block, row));
      bindings.emplace_back("state", dsl::Value(std::move(current)));
      bindings.emplace_back("goal", dsl::Value(std::move(wanted)));
      break;
    }
  }
  return bindings;
}

dsl::EvalOutcome heuristic_value(const CompiledHeuristic& h, const EncodedState& state,
                                 const GoalSpec& goal) {
  if (h.program.kind == HeuristicKind::builtin) {
    if (h.program.source == kCubeBuiltin)
      return static_cast<double>(cube_nonuniform_faces(std::get<CubeState>(state.payload)));
    if (h.program.source == kG24Builtin)
      return g24_min_expr_gap(std::get<Game24State>(state.payload).numbers);
    if (h.program.source == kBwBuiltin)
      return bw_misplaced_plus_distance_value(std::get<BlocksState>(state.payload),
                                              std::get<BwGoal>(goal));
    return dsl::Fault{dsl::FaultKind::unbound,
                      "unknown builtin '" + h.program.source + "'"};
  }
  return dsl::evaluate_expression(h.ast, dsl_view(state, goal), h.limits);
}

}  // namespace autohd
