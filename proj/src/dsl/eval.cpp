#include <algorithm>
#include <cmath>

#include "autohd/dsl.hpp"

namespace autohd::dsl {

namespace {

struct FaultSignal {
  Fault fault;
};

class Evaluator {
 public:
  Evaluator(const Bindings& bindings, const EvalLimits& limits) : limits_(limits) {
    for (const auto& [name, value] : bindings) env_.emplace_back(name, value);
  }

  EvalOutcome run(const ExprPtr& expr) {
    try {
      Value v = eval(expr);
      if (!v.is_number())
        return Fault{FaultKind::type, "heuristic result is not a number"};
      double d = v.num();
      if (std::isnan(d)) return Fault{FaultKind::type, "heuristic result is not finite"};
      if (d < 0.0) d = 0.0;  // values live in the nonnegative extended reals
      return d;
    } catch (const FaultSignal& sig) {
      return sig.fault;
    }
  }

 private:
  [[noreturn]] void fault(FaultKind kind, const std::string& msg) {
    throw FaultSignal{Fault{kind, msg}};
  }

  void tick(long n = 1) {
    steps_ += n;
    if (steps_ > limits_.step_budget) fault(FaultKind::budget, "step budget exhausted");
  }

  double as_number(const Value& v, const char* what) {
    if (!v.is_number()) fault(FaultKind::type, std::string(what) + " must be a number");
    return v.num();
  }

  bool as_bool(const Value& v, const char* what) {
    if (!v.is_bool()) fault(FaultKind::type, std::string(what) + " must be a boolean");
    return v.boolean();
  }

  const ValueList& as_list(const Value& v, const char* what) {
    if (!v.is_list()) fault(FaultKind::type, std::string(what) + " must be a list");
    return v.list();
  }

  long as_index(const Value& v, const char* what) {
    const double d = as_number(v, what);
    const double r = std::nearbyint(d);
    if (!std::isfinite(d) || std::fabs(d - r) > 1e-9)
      fault(FaultKind::type, std::string(what) + " must be an integer");
    return static_cast<long>(r);
  }

  void check_collection(size_t n) {
    if (static_cast<long>(n) > limits_.max_collection_size)
      fault(FaultKind::collection_overflow, "collection larger than the configured limit");
  }

  const Value* lookup(const std::string& name) {
    for (auto it = env_.rbegin(); it != env_.rend(); ++it)
      if (it->first == name) return &it->second;
    return nullptr;
  }

  Value eval(const ExprPtr& e) {
    tick();
    switch (e->kind) {
      case Expr::Kind::number:
        return Value(e->number);
      case Expr::Kind::ident: {
        const Value* v = lookup(e->name);
        // Parse-time resolution makes this unreachable for compiled programs.
        if (!v) fault(FaultKind::unbound, "unbound identifier '" + e->name + "'");
        return *v;
      }
      case Expr::Kind::let: {
        Value bound = eval(e->args[0]);
        env_.emplace_back(e->name, std::move(bound));
        Value result = eval(e->args[1]);
        env_.pop_back();
        return result;
      }
      case Expr::Kind::ite: {
        const bool cond = as_bool(eval(e->args[0]), "if condition");
        return eval(e->args[cond ? 1 : 2]);
      }
      case Expr::Kind::neg:
        return Value(-as_number(eval(e->args[0]), "negation operand"));
      case Expr::Kind::binop:
        return eval_binop(e);
      case Expr::Kind::call:
        return eval_call(e);
      case Expr::Kind::binder_call:
        return eval_binder(e);
    }
    fault(FaultKind::type, "malformed expression node");
  }

  Value eval_binop(const ExprPtr& e) {
    if (e->op == BinOp::logical_and || e->op == BinOp::logical_or) {
      const bool lhs = as_bool(eval(e->args[0]), "logical operand");
      if (e->op == BinOp::logical_and && !lhs) return Value(false);
      if (e->op == BinOp::logical_or && lhs) return Value(true);
      return Value(as_bool(eval(e->args[1]), "logical operand"));
    }
    Value lhs = eval(e->args[0]);
    Value rhs = eval(e->args[1]);
    switch (e->op) {
      case BinOp::add: return Value(as_number(lhs, "operand") + as_number(rhs, "operand"));
      case BinOp::sub: return Value(as_number(lhs, "operand") - as_number(rhs, "operand"));
      case BinOp::mul: return Value(as_number(lhs, "operand") * as_number(rhs, "operand"));
      case BinOp::div: {
        const double a = as_number(lhs, "operand");
        const double b = as_number(rhs, "operand");
        if (b == 0.0) fault(FaultKind::div_zero, "division by zero");
        return Value(a / b);
      }
      case BinOp::eq: return Value(equal(lhs, rhs));
      case BinOp::ne: return Value(!equal(lhs, rhs));
      case BinOp::lt: return Value(as_number(lhs, "comparison operand") < as_number(rhs, "comparison operand"));
      case BinOp::le: return Value(as_number(lhs, "comparison operand") <= as_number(rhs, "comparison operand"));
      case BinOp::gt: return Value(as_number(lhs, "comparison operand") > as_number(rhs, "comparison operand"));
      case BinOp::ge: return Value(as_number(lhs, "comparison operand") >= as_number(rhs, "comparison operand"));
      default: break;
    }
    fault(FaultKind::type, "malformed operator");
  }

  bool equal(const Value& a, const Value& b) {
    if (a.is_number() && b.is_number()) return a.num() == b.num();
    if (a.is_bool() && b.is_bool()) return a.boolean() == b.boolean();
    if (a.is_symbol() && b.is_symbol()) return a.sym() == b.sym();
    fault(FaultKind::type, "'==' requires two numbers, booleans or symbols of the same kind");
  }

  Value eval_binder(const ExprPtr& e) {
    const Value collection = eval(e->args[0]);
    const ValueList& items = as_list(collection, "binder collection");
    ValueList out;
    long matches = 0;
    for (const Value& item : items) {
      tick();
      env_.emplace_back(e->binder_var, item);
      Value body = eval(e->args[1]);
      env_.pop_back();
      if (e->name == "map") {
        out.push_back(std::move(body));
      } else if (e->name == "filter") {
        if (as_bool(body, "filter predicate")) out.push_back(item);
      } else {  // count
        if (as_bool(body, "count predicate")) ++matches;
      }
    }
    if (e->name == "count") return Value(static_cast<double>(matches));
    return Value(std::move(out));
  }

  Value eval_call(const ExprPtr& e) {
    std::vector<Value> args;
    args.reserve(e->args.size());
    for (const auto& a : e->args) args.push_back(eval(a));
    const std::string& f = e->name;

    if (f == "abs") return Value(std::fabs(as_number(args[0], "abs argument")));
    if (f == "len" || f == "count")
      return Value(static_cast<double>(as_list(args[0], "argument").size()));
    if (f == "sum") {
      double total = 0.0;
      for (const Value& v : as_list(args[0], "sum argument")) {
        tick();
        total += as_number(v, "sum element");
      }
      return Value(total);
    }
    if (f == "min" || f == "max") {
      const bool is_min = f == "min";
      if (args.size() == 2)
        return Value(is_min ? std::min(as_number(args[0], "operand"), as_number(args[1], "operand"))
                            : std::max(as_number(args[0], "operand"), as_number(args[1], "operand")));
      const ValueList& items = as_list(args[0], "argument");
      if (items.empty()) fault(FaultKind::type, f + " of an empty list");
      double best = as_number(items[0], "element");
      for (const Value& v : items) {
        tick();
        const double d = as_number(v, "element");
        best = is_min ? std::min(best, d) : std::max(best, d);
      }
      return Value(best);
    }
    if (f == "range") {
      const long n = as_index(args[0], "range bound");
      if (n < 0) fault(FaultKind::type, "range bound must be nonnegative");
      check_collection(static_cast<size_t>(n));
      ValueList out;
      out.reserve(static_cast<size_t>(n));
      for (long i = 0; i < n; ++i) {
        tick();
        out.push_back(Value(static_cast<double>(i)));
      }
      return Value(std::move(out));
    }
    if (f == "zip") {
      const ValueList& a = as_list(args[0], "zip argument");
      const ValueList& b = as_list(args[1], "zip argument");
      ValueList out;
      const size_t n = std::min(a.size(), b.size());
      out.reserve(n);
      for (size_t i = 0; i < n; ++i) {
        tick();
        out.push_back(Value(ValueList{a[i], b[i]}));
      }
      return Value(std::move(out));
    }
    if (f == "nth") {
      const ValueList& items = as_list(args[0], "nth argument");
      const long i = as_index(args[1], "nth index");
      if (i < 0 || static_cast<size_t>(i) >= items.size())
        fault(FaultKind::type, "nth index out of range");
      return items[static_cast<size_t>(i)];
    }
    if (f == "append") {
      ValueList out = as_list(args[0], "append argument");
      check_collection(out.size() + 1);
      tick(static_cast<long>(out.size()) + 1);
      out.push_back(args[1]);
      return Value(std::move(out));
    }
    if (f == "concat") {
      const ValueList& a = as_list(args[0], "concat argument");
      const ValueList& b = as_list(args[1], "concat argument");
      check_collection(a.size() + b.size());
      tick(static_cast<long>(a.size() + b.size()));
      ValueList out = a;
      out.insert(out.end(), b.begin(), b.end());
      return Value(std::move(out));
    }
    if (f == "flatten") {
      const ValueList& lists = as_list(args[0], "flatten argument");
      ValueList out;
      for (const Value& v : lists) {
        const ValueList& inner = as_list(v, "flatten element");
        check_collection(out.size() + inner.size());
        tick(static_cast<long>(inner.size()));
        out.insert(out.end(), inner.begin(), inner.end());
      }
      return Value(std::move(out));
    }
    if (f == "list") {
      check_collection(args.size());
      return Value(ValueList(args.begin(), args.end()));
    }
    if (f == "faces") {
      const ValueList& cells = as_list(args[0], "faces argument");
      if (cells.size() != 24) fault(FaultKind::type, "faces expects a 24-element state");
      ValueList out;
      for (int face = 0; face < 6; ++face) {
        ValueList quad;
        for (int i = 0; i < 4; ++i) {
          tick();
          quad.push_back(cells[static_cast<size_t>(4 * face + i)]);
        }
        out.push_back(Value(std::move(quad)));
      }
      return Value(std::move(out));
    }
    if (f == "uniform") {
      const ValueList& quad = as_list(args[0], "uniform argument");
      if (quad.empty()) return Value(true);
      const double first = as_number(quad[0], "face cell");
      for (const Value& v : quad) {
        tick();
        if (as_number(v, "face cell") != first) return Value(false);
      }
      return Value(true);
    }
    if (f == "block" || f == "support" || f == "height") {
      const ValueList& row = as_list(args[0], "row argument");
      if (row.size() != 3)
        fault(FaultKind::type, f + " expects a (block, support, height) row");
      if (f == "block") return row[0];
      if (f == "support") return row[1];
      return row[2];
    }
    fault(FaultKind::unbound, "unknown function '" + f + "'");
  }

  const EvalLimits& limits_;
  Bindings env_;
  long steps_ = 0;
};

}  // namespace

EvalOutcome evaluate_expression(const ExprPtr& expr, const Bindings& bindings,
                                const EvalLimits& limits) {
  if (!expr) return Fault{FaultKind::syntax, "no expression"};
  Evaluator ev(bindings, limits);
  return ev.run(expr);
}

}  // namespace autohd::dsl
