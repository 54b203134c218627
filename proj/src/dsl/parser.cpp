#include <cctype>
#include <cstdlib>
#include <map>
#include <set>

#include "autohd/dsl.hpp"

namespace autohd::dsl {

namespace {

constexpr int kMaxNestingDepth = 200;

enum class Tok {
  number, ident, kw_let, kw_in, kw_if, kw_then, kw_else, kw_and, kw_or,
  plus, minus, star, slash, lparen, rparen, comma, assign,
  eq, ne, lt, le, gt, ge, end
};

struct Token {
  Tok kind = Tok::end;
  double number = 0.0;
  std::string text;
  int line = 1;
  int col = 1;
};

struct LexOutput {
  std::vector<Token> tokens;
  std::optional<ParseError> error;
};

LexOutput lex(const std::string& src) {
  LexOutput out;
  int line = 1, col = 1;
  size_t i = 0;
  auto push = [&](Tok k, std::string text, double num = 0.0) {
    out.tokens.push_back({k, num, std::move(text), line, col});
  };
  while (i < src.size()) {
    const char c = src[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++col;
      ++i;
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      size_t j = i;
      while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      if (j < src.size() && src[j] == '.') {
        ++j;
        if (j >= src.size() || !std::isdigit(static_cast<unsigned char>(src[j]))) {
          out.error = {ParseErrorKind::syntax, "digit expected after decimal point", line, col,
                       src.substr(i, j - i + 1)};
          return out;
        }
        while (j < src.size() && std::isdigit(static_cast<unsigned char>(src[j]))) ++j;
      }
      if (j < src.size() && (src[j] == 'e' || src[j] == 'E')) {
        size_t k = j + 1;
        if (k < src.size() && (src[k] == '+' || src[k] == '-')) ++k;
        if (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) {
          while (k < src.size() && std::isdigit(static_cast<unsigned char>(src[k]))) ++k;
          j = k;
        }
      }
      const std::string text = src.substr(i, j - i);
      push(Tok::number, text, std::strtod(text.c_str(), nullptr));
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_'))
        ++j;
      const std::string word = src.substr(i, j - i);
      Tok k = Tok::ident;
      if (word == "let") k = Tok::kw_let;
      else if (word == "in") k = Tok::kw_in;
      else if (word == "if") k = Tok::kw_if;
      else if (word == "then") k = Tok::kw_then;
      else if (word == "else") k = Tok::kw_else;
      else if (word == "and") k = Tok::kw_and;
      else if (word == "or") k = Tok::kw_or;
      push(k, word);
      col += static_cast<int>(j - i);
      i = j;
      continue;
    }
    auto two = [&](char a, char b) {
      return c == a && i + 1 < src.size() && src[i + 1] == b;
    };
    if (two('=', '=')) { push(Tok::eq, "=="); i += 2; col += 2; continue; }
    if (two('!', '=')) { push(Tok::ne, "!="); i += 2; col += 2; continue; }
    if (two('<', '=')) { push(Tok::le, "<="); i += 2; col += 2; continue; }
    if (two('>', '=')) { push(Tok::ge, ">="); i += 2; col += 2; continue; }
    switch (c) {
      case '+': push(Tok::plus, "+"); break;
      case '-': push(Tok::minus, "-"); break;
      case '*': push(Tok::star, "*"); break;
      case '/': push(Tok::slash, "/"); break;
      case '(': push(Tok::lparen, "("); break;
      case ')': push(Tok::rparen, ")"); break;
      case ',': push(Tok::comma, ","); break;
      case '=': push(Tok::assign, "="); break;
      case '<': push(Tok::lt, "<"); break;
      case '>': push(Tok::gt, ">"); break;
      default:
        out.error = {ParseErrorKind::syntax, "unexpected character", line, col,
                     std::string(1, c)};
        return out;
    }
    ++i;
    ++col;
  }
  out.tokens.push_back({Tok::end, 0.0, "<end>", line, col});
  return out;
}

const FunctionSig* find_function(const std::string& name) {
  for (const auto& f : functions())
    if (f.name == name) return &f;
  return nullptr;
}

class Parser {
 public:
  Parser(std::vector<Token> tokens, std::vector<std::string> bound)
      : toks_(std::move(tokens)), scope_(bound.begin(), bound.end()) {}

  ParseResult run() {
    ParseResult result;
    ExprPtr e = expr();
    if (!error_ && cur().kind != Tok::end)
      fail(ParseErrorKind::syntax, "unexpected trailing input", cur());
    if (error_) {
      result.error = *error_;
      return result;
    }
    result.ast = e;
    return result;
  }

 private:
  const Token& cur() const { return toks_[pos_]; }
  const Token& advance() { return toks_[pos_++]; }
  bool accept(Tok k) {
    if (cur().kind == k) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(Tok k, const char* what) {
    if (!accept(k)) fail(ParseErrorKind::syntax, std::string("expected ") + what, cur());
  }

  void fail(ParseErrorKind kind, const std::string& msg, const Token& at) {
    if (!error_) error_ = ParseError{kind, msg, at.line, at.col, at.text};
  }

  ExprPtr make(Expr e, const Token& at) {
    e.line = at.line;
    e.col = at.col;
    return std::make_shared<Expr>(std::move(e));
  }

  struct DepthGuard {
    Parser& p;
    explicit DepthGuard(Parser& parser) : p(parser) {
      if (++p.depth_ > kMaxNestingDepth)
        p.fail(ParseErrorKind::syntax, "expression nested too deeply", p.cur());
    }
    ~DepthGuard() { --p.depth_; }
  };

  ExprPtr expr() {
    DepthGuard guard(*this);
    if (error_) return nullptr;
    if (cur().kind == Tok::kw_let) return let_expr();
    if (cur().kind == Tok::kw_if) return ite_expr();
    return or_expr();
  }

  ExprPtr let_expr() {
    const Token at = advance();  // let
    if (cur().kind != Tok::ident) {
      fail(ParseErrorKind::syntax, "expected identifier after 'let'", cur());
      return nullptr;
    }
    const std::string var = advance().text;
    expect(Tok::assign, "'=' in let binding");
    ExprPtr value = expr();
    expect(Tok::kw_in, "'in' after let binding");
    scope_.insert(var);
    shadow_stack_.push_back(var);
    ExprPtr body = expr();
    pop_scope(var);
    if (error_) return nullptr;
    Expr e;
    e.kind = Expr::Kind::let;
    e.name = var;
    e.args = {value, body};
    return make(std::move(e), at);
  }

  ExprPtr ite_expr() {
    const Token at = advance();  // if
    ExprPtr cond = expr();
    expect(Tok::kw_then, "'then'");
    ExprPtr then_branch = expr();
    expect(Tok::kw_else, "'else'");
    ExprPtr else_branch = expr();
    if (error_) return nullptr;
    Expr e;
    e.kind = Expr::Kind::ite;
    e.args = {cond, then_branch, else_branch};
    return make(std::move(e), at);
  }

  ExprPtr or_expr() {
    ExprPtr lhs = and_expr();
    while (!error_ && cur().kind == Tok::kw_or) {
      const Token at = advance();
      ExprPtr rhs = and_expr();
      if (error_) return nullptr;
      Expr e;
      e.kind = Expr::Kind::binop;
      e.op = BinOp::logical_or;
      e.args = {lhs, rhs};
      lhs = make(std::move(e), at);
    }
    return lhs;
  }

  ExprPtr and_expr() {
    ExprPtr lhs = cmp_expr();
    while (!error_ && cur().kind == Tok::kw_and) {
      const Token at = advance();
      ExprPtr rhs = cmp_expr();
      if (error_) return nullptr;
      Expr e;
      e.kind = Expr::Kind::binop;
      e.op = BinOp::logical_and;
      e.args = {lhs, rhs};
      lhs = make(std::move(e), at);
    }
    return lhs;
  }

  ExprPtr cmp_expr() {
    ExprPtr lhs = add_expr();
    if (error_) return nullptr;
    BinOp op;
    switch (cur().kind) {
      case Tok::eq: op = BinOp::eq; break;
      case Tok::ne: op = BinOp::ne; break;
      case Tok::lt: op = BinOp::lt; break;
      case Tok::le: op = BinOp::le; break;
      case Tok::gt: op = BinOp::gt; break;
      case Tok::ge: op = BinOp::ge; break;
      default: return lhs;
    }
    const Token at = advance();
    ExprPtr rhs = add_expr();
    if (error_) return nullptr;
    Expr e;
    e.kind = Expr::Kind::binop;
    e.op = op;
    e.args = {lhs, rhs};
    return make(std::move(e), at);
  }

  ExprPtr add_expr() {
    ExprPtr lhs = mul_expr();
    while (!error_ && (cur().kind == Tok::plus || cur().kind == Tok::minus)) {
      const Token at = advance();
      ExprPtr rhs = mul_expr();
      if (error_) return nullptr;
      Expr e;
      e.kind = Expr::Kind::binop;
      e.op = at.kind == Tok::plus ? BinOp::add : BinOp::sub;
      e.args = {lhs, rhs};
      lhs = make(std::move(e), at);
    }
    return lhs;
  }

  ExprPtr mul_expr() {
    ExprPtr lhs = unary_expr();
    while (!error_ && (cur().kind == Tok::star || cur().kind == Tok::slash)) {
      const Token at = advance();
      ExprPtr rhs = unary_expr();
      if (error_) return nullptr;
      Expr e;
      e.kind = Expr::Kind::binop;
      e.op = at.kind == Tok::star ? BinOp::mul : BinOp::div;
      e.args = {lhs, rhs};
      lhs = make(std::move(e), at);
    }
    return lhs;
  }

  ExprPtr unary_expr() {
    DepthGuard guard(*this);
    if (error_) return nullptr;
    if (cur().kind == Tok::minus) {
      const Token at = advance();
      ExprPtr inner = unary_expr();
      if (error_) return nullptr;
      Expr e;
      e.kind = Expr::Kind::neg;
      e.args = {inner};
      return make(std::move(e), at);
    }
    return atom();
  }

  ExprPtr atom() {
    DepthGuard guard(*this);
    if (error_) return nullptr;
    const Token at = cur();
    if (at.kind == Tok::number) {
      advance();
      Expr e;
      e.kind = Expr::Kind::number;
      e.number = at.number;
      return make(std::move(e), at);
    }
    if (at.kind == Tok::lparen) {
      advance();
      ExprPtr inner = expr();
      expect(Tok::rparen, "')'");
      return inner;
    }
    if (at.kind == Tok::ident) {
      advance();
      if (cur().kind == Tok::lparen) return call(at);
      if (!scope_.count(at.text)) {
        fail(ParseErrorKind::unbound, "unbound identifier '" + at.text + "'", at);
        return nullptr;
      }
      Expr e;
      e.kind = Expr::Kind::ident;
      e.name = at.text;
      return make(std::move(e), at);
    }
    fail(ParseErrorKind::syntax, "expected expression", at);
    return nullptr;
  }

  ExprPtr call(const Token& name_tok) {
    advance();  // (
    const FunctionSig* sig = find_function(name_tok.text);
    if (!sig) {
      fail(ParseErrorKind::unbound, "unknown function '" + name_tok.text + "'", name_tok);
      return nullptr;
    }

    // Binder form: IDENT "(" IDENT "in" expr "," expr ")".
    if (cur().kind == Tok::ident && toks_[pos_ + 1].kind == Tok::kw_in) {
      if (!sig->binder_allowed) {
        fail(ParseErrorKind::arity,
             "function '" + name_tok.text + "' does not take a binder", name_tok);
        return nullptr;
      }
      const std::string var = advance().text;
      advance();  // in
      ExprPtr collection = expr();
      expect(Tok::comma, "',' in binder form");
      scope_.insert(var);
      shadow_stack_.push_back(var);
      ExprPtr body = expr();
      pop_scope(var);
      expect(Tok::rparen, "')'");
      if (error_) return nullptr;
      Expr e;
      e.kind = Expr::Kind::binder_call;
      e.name = name_tok.text;
      e.binder_var = var;
      e.args = {collection, body};
      return make(std::move(e), name_tok);
    }

    if (name_tok.text == "map" || name_tok.text == "filter") {
      fail(ParseErrorKind::arity,
           "function '" + name_tok.text + "' requires the binder form 'x in collection'",
           name_tok);
      return nullptr;
    }
    std::vector<ExprPtr> args;
    if (!accept(Tok::rparen)) {
      do {
        args.push_back(expr());
      } while (!error_ && accept(Tok::comma));
      expect(Tok::rparen, "')'");
    }
    if (error_) return nullptr;
    const int n = static_cast<int>(args.size());
    if (n < sig->min_arity || (sig->max_arity >= 0 && n > sig->max_arity)) {
      fail(ParseErrorKind::arity,
           "function '" + name_tok.text + "' called with " + std::to_string(n) + " arguments",
           name_tok);
      return nullptr;
    }
    Expr e;
    e.kind = Expr::Kind::call;
    e.name = name_tok.text;
    e.args = std::move(args);
    return make(std::move(e), name_tok);
  }

  // Scope is a multiset in effect: shadowing re-inserts; popping removes one
  // occurrence only if no earlier binding of the same name remains.
  void pop_scope(const std::string& var) {
    shadow_stack_.pop_back();
    bool still_bound = false;
    for (const auto& v : shadow_stack_)
      if (v == var) still_bound = true;
    if (!still_bound && !outer_.count(var)) scope_.erase(var);
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
  std::set<std::string> scope_;
  std::set<std::string> outer_{scope_};
  std::vector<std::string> shadow_stack_;
  std::optional<ParseError> error_;
  int depth_ = 0;
};

}  // namespace

std::string fault_kind_name(FaultKind kind) {
  switch (kind) {
    case FaultKind::syntax: return "syntax";
    case FaultKind::unbound: return "unbound";
    case FaultKind::type: return "type";
    case FaultKind::div_zero: return "div_zero";
    case FaultKind::budget: return "budget";
    case FaultKind::collection_overflow: return "collection_overflow";
  }
  return "?";
}

std::string ParseError::describe() const {
  const char* kind_name = kind == ParseErrorKind::syntax
                              ? "syntax error"
                              : (kind == ParseErrorKind::unbound ? "unbound identifier"
                                                                 : "arity mismatch");
  return std::string(kind_name) + " at " + std::to_string(line) + ":" + std::to_string(col) +
         " near '" + span + "': " + message;
}

const std::vector<FunctionSig>& functions() {
  static const std::vector<FunctionSig> fns = {
      {"map", 2, 2, true},     {"filter", 2, 2, true},  {"count", 1, 1, true},
      {"sum", 1, 1, false},    {"min", 1, 2, false},    {"max", 1, 2, false},
      {"len", 1, 1, false},    {"abs", 1, 1, false},    {"zip", 2, 2, false},
      {"range", 1, 1, false},  {"nth", 2, 2, false},    {"append", 2, 2, false},
      {"concat", 2, 2, false}, {"flatten", 1, 1, false}, {"list", 0, -1, false},
      {"faces", 1, 1, false},  {"uniform", 1, 1, false},
      {"block", 1, 1, false},  {"support", 1, 1, false}, {"height", 1, 1, false},
  };
  return fns;
}

ParseResult parse_expression(const std::string& source,
                             const std::vector<std::string>& bound_names) {
  if (source.find_first_not_of(" \t\r\n") == std::string::npos) {
    ParseResult r;
    r.error = ParseError{ParseErrorKind::syntax, "empty program", 1, 1, ""};
    return r;
  }
  LexOutput lexed = lex(source);
  if (lexed.error) {
    ParseResult r;
    r.error = lexed.error;
    return r;
  }
  Parser parser(std::move(lexed.tokens), bound_names);
  return parser.run();
}

bool ast_equal(const ExprPtr& a, const ExprPtr& b) {
  if (!a || !b) return a == b;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case Expr::Kind::number:
      return a->number == b->number;
    case Expr::Kind::ident:
      return a->name == b->name;
    default:
      break;
  }
  if (a->name != b->name || a->binder_var != b->binder_var) return false;
  if (a->kind == Expr::Kind::binop && a->op != b->op) return false;
  if (a->args.size() != b->args.size()) return false;
  for (size_t i = 0; i < a->args.size(); ++i)
    if (!ast_equal(a->args[i], b->args[i])) return false;
  return true;
}

}  // namespace autohd::dsl
