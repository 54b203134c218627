#include <charconv>
#include <sstream>

#include "autohd/dsl.hpp"

namespace autohd::dsl {

namespace {

// Binding strength used for minimal parenthesization; let/if are weakest.
int precedence(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::let:
    case Expr::Kind::ite:
      return 0;
    case Expr::Kind::binop:
      switch (e->op) {
        case BinOp::logical_or: return 1;
        case BinOp::logical_and: return 2;
        case BinOp::eq:
        case BinOp::ne:
        case BinOp::lt:
        case BinOp::le:
        case BinOp::gt:
        case BinOp::ge: return 3;
        case BinOp::add:
        case BinOp::sub: return 4;
        case BinOp::mul:
        case BinOp::div: return 5;
      }
      return 0;
    case Expr::Kind::neg:
      return 6;
    default:
      return 7;  // atoms and calls
  }
}

const char* op_text(BinOp op) {
  switch (op) {
    case BinOp::add: return "+";
    case BinOp::sub: return "-";
    case BinOp::mul: return "*";
    case BinOp::div: return "/";
    case BinOp::eq: return "==";
    case BinOp::ne: return "!=";
    case BinOp::lt: return "<";
    case BinOp::le: return "<=";
    case BinOp::gt: return ">";
    case BinOp::ge: return ">=";
    case BinOp::logical_and: return "and";
    case BinOp::logical_or: return "or";
  }
  return "?";
}

std::string number_text(double d) {
  if (d == static_cast<long long>(d) && std::abs(d) < 1e15)
    return std::to_string(static_cast<long long>(d));
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), d);
  (void)ec;
  return std::string(buf, ptr);
}

void print(std::ostringstream& out, const ExprPtr& e, int min_prec) {
  const int prec = precedence(e);
  const bool parens = prec < min_prec;
  if (parens) out << "(";
  switch (e->kind) {
    case Expr::Kind::number:
      out << number_text(e->number);
      break;
    case Expr::Kind::ident:
      out << e->name;
      break;
    case Expr::Kind::let:
      out << "let " << e->name << " = ";
      print(out, e->args[0], 0);
      out << " in ";
      print(out, e->args[1], 0);
      break;
    case Expr::Kind::ite:
      out << "if ";
      print(out, e->args[0], 0);
      out << " then ";
      print(out, e->args[1], 0);
      out << " else ";
      print(out, e->args[2], 0);
      break;
    case Expr::Kind::binop: {
      // Left-associative chains keep their own level on the left; the right
      // operand needs one level more so "a - (b - c)" round-trips. The
      // comparison level is non-associative, so both sides bind tighter.
      const bool cmp = prec == 3;
      print(out, e->args[0], cmp ? prec + 1 : prec);
      out << " " << op_text(e->op) << " ";
      print(out, e->args[1], prec + 1);
      break;
    }
    case Expr::Kind::neg:
      out << "-";
      print(out, e->args[0], 6);
      break;
    case Expr::Kind::call: {
      out << e->name << "(";
      for (size_t i = 0; i < e->args.size(); ++i) {
        if (i > 0) out << ", ";
        print(out, e->args[i], 0);
      }
      out << ")";
      break;
    }
    case Expr::Kind::binder_call:
      out << e->name << "(" << e->binder_var << " in ";
      print(out, e->args[0], 0);
      out << ", ";
      print(out, e->args[1], 0);
      out << ")";
      break;
  }
  if (parens) out << ")";
}

}  // namespace

std::string pretty_print(const ExprPtr& expr) {
  if (!expr) return "";
  std::ostringstream out;
  print(out, expr, 0);
  return out.str();
}

}  // namespace autohd::dsl
