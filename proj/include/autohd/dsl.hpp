#pragma once

#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace autohd::dsl {

// ---------------------------------------------------------------------------
// Values

struct Value;
using ValueList = std::vector<Value>;

// Opaque atom used for block names and the TABLE/HAND markers; compares by
// name only.
struct Symbol {
  std::string name;
  bool operator==(const Symbol&) const = default;
};

struct Value {
  std::variant<double, bool, Symbol, ValueList> v;

  Value() : v(0.0) {}
  Value(double d) : v(d) {}
  Value(bool b) : v(b) {}
  Value(Symbol s) : v(std::move(s)) {}
  Value(ValueList l) : v(std::move(l)) {}

  bool is_number() const { return std::holds_alternative<double>(v); }
  bool is_bool() const { return std::holds_alternative<bool>(v); }
  bool is_symbol() const { return std::holds_alternative<Symbol>(v); }
  bool is_list() const { return std::holds_alternative<ValueList>(v); }

  double num() const { return std::get<double>(v); }
  bool boolean() const { return std::get<bool>(v); }
  const Symbol& sym() const { return std::get<Symbol>(v); }
  const ValueList& list() const { return std::get<ValueList>(v); }
};

using Bindings = std::vector<std::pair<std::string, Value>>;

// ---------------------------------------------------------------------------
// Faults

enum class FaultKind { syntax, unbound, type, div_zero, budget, collection_overflow };

std::string fault_kind_name(FaultKind kind);

struct Fault {
  FaultKind kind = FaultKind::type;
  std::string message;
};

// Evaluation yields a nonnegative extended real (negative results clamp to 0,
// non-finite results other than +inf become faults) or a typed fault; it
// never throws.
using EvalOutcome = std::variant<double, Fault>;

inline bool is_fault(const EvalOutcome& r) { return std::holds_alternative<Fault>(r); }

struct EvalLimits {
  long step_budget = 100000;
  long max_collection_size = 10000;
};

// ---------------------------------------------------------------------------
// Syntax tree

enum class BinOp { add, sub, mul, div, eq, ne, lt, le, gt, ge, logical_and, logical_or };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { number, ident, let, ite, binop, neg, call, binder_call };

  Kind kind = Kind::number;
  double number = 0.0;
  std::string name;        // ident name, call function name, or let variable
  std::string binder_var;  // bound variable of map/filter/count binder form
  BinOp op = BinOp::add;
  // let: [bound value, body]; ite: [cond, then, else]; binop: [lhs, rhs];
  // neg: [operand]; call: arguments; binder_call: [collection, body].
  std::vector<ExprPtr> args;
  int line = 0;
  int col = 0;
};

bool ast_equal(const ExprPtr& a, const ExprPtr& b);

// ---------------------------------------------------------------------------
// Parsing

enum class ParseErrorKind { syntax, unbound, arity };

struct ParseError {
  ParseErrorKind kind = ParseErrorKind::syntax;
  std::string message;
  int line = 0;
  int col = 0;
  std::string span;  // offending source fragment

  std::string describe() const;
};

struct ParseResult {
  ExprPtr ast;  // null on failure
  std::optional<ParseError> error;

  bool ok() const { return ast != nullptr; }
};

// Parses an expression and resolves names against `bound_names` plus the
// function catalog in `functions()`. Diagnostics carry line/column spans so
// they can be fed back into evolution logs.
ParseResult parse_expression(const std::string& source,
                             const std::vector<std::string>& bound_names);

// Canonical source form: parse_expression(pretty_print(e)) is structurally
// equal to e.
std::string pretty_print(const ExprPtr& expr);

// ---------------------------------------------------------------------------
// Evaluation

EvalOutcome evaluate_expression(const ExprPtr& expr, const Bindings& bindings,
                                const EvalLimits& limits);

// Known function names with arity bounds (map/filter/count additionally
// accept the binder form).
struct FunctionSig {
  std::string name;
  int min_arity;
  int max_arity;  // -1 for variadic
  bool binder_allowed;
};

const std::vector<FunctionSig>& functions();

}  // namespace autohd::dsl
