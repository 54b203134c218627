#pragma once

#include <optional>
#include <string>
#include <vector>

#include "autohd/dsl.hpp"
#include "autohd/states.hpp"

namespace autohd {

enum class HeuristicKind { dsl_source, builtin };

// A heuristic as carried through evolution and archives: a human-readable
// description plus either DSL source or a builtin name. The id is a stable
// hash of (kind, canonical source, domain), so whitespace variants of the
// same program deduplicate.
struct HeuristicProgram {
  std::string id;
  std::string description;
  HeuristicKind kind = HeuristicKind::dsl_source;
  std::string source;  // DSL text, or the builtin name
  DomainId domain = DomainId::blocksworld;
};

struct CompiledHeuristic {
  HeuristicProgram program;
  dsl::ExprPtr ast;  // null for builtins
  dsl::EvalLimits limits;
};

struct CompileResult {
  std::optional<CompiledHeuristic> heuristic;
  std::optional<dsl::ParseError> error;

  bool ok() const { return heuristic.has_value(); }
};

// Identifiers a program may reference: `state` everywhere, plus `goal` for
// blocksworld and `target` (the constant 24) for game24.
std::vector<std::string> domain_bound_names(DomainId domain);

CompileResult parse_program(const std::string& source, DomainId domain,
                            const dsl::EvalLimits& limits = {},
                            const std::string& description = "");

CompiledHeuristic compile(const HeuristicProgram& program, const dsl::EvalLimits& limits = {});

// The three reference heuristics, evaluated natively (exact arithmetic for
// game24). Each also has an equivalent DSL form via builtin_dsl_source.
//   bw_misplaced_plus_distance, g24_min_expr_gap, cube_nonuniform_faces
HeuristicProgram builtin(const std::string& name);
const std::vector<std::string>& builtin_names();
bool is_builtin_name(const std::string& name);
std::string builtin_dsl_source(const std::string& name);

// Evaluation bindings for a state: cube binds `state` to the 24 facelets,
// game24 binds `state` to the numbers and `target` to 24, blocksworld binds
// `state` and `goal` to (block, support, height) relational tables.
dsl::Bindings dsl_view(const EncodedState& state, const GoalSpec& goal);

// Evaluates the heuristic on a state; never throws. Faults come back as
// values, NaN results normalize to faults and negative values clamp to 0.
dsl::EvalOutcome heuristic_value(const CompiledHeuristic& h, const EncodedState& state,
                                 const GoalSpec& goal);

std::string stable_hash(const std::string& text);

}  // namespace autohd
