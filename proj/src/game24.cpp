#include "autohd/game24.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <sstream>

namespace autohd {

namespace {

bool contains_pair(const std::vector<Game24Action>& acts, const Game24Action& a) {
  return std::find(acts.begin(), acts.end(), a) != acts.end();
}

void remove_one(std::vector<Rational>& nums, const Rational& v) {
  auto it = std::find(nums.begin(), nums.end(), v);
  if (it == nums.end())
    throw std::invalid_argument("operand " + v.str() + " not present in state");
  nums.erase(it);
}

Rational eval_op(G24Op op, const Rational& a, const Rational& b) {
  switch (op) {
    case G24Op::add: return a + b;
    case G24Op::sub: return a - b;
    case G24Op::mul: return a * b;
    case G24Op::div: return a / b;
  }
  throw std::logic_error("bad op");
}

// Exhaustively folds the multiset down to single values; all reachable
// results for up to 4 numbers is a few thousand entries.
void collect_results(const std::vector<Rational>& nums, std::vector<Rational>& out) {
  if (nums.size() == 1) {
    out.push_back(nums[0]);
    return;
  }
  for (size_t i = 0; i < nums.size(); ++i) {
    for (size_t j = i + 1; j < nums.size(); ++j) {
      std::vector<Rational> rest;
      rest.reserve(nums.size() - 1);
      for (size_t k = 0; k < nums.size(); ++k)
        if (k != i && k != j) rest.push_back(nums[k]);
      const Rational a = nums[i];
      const Rational b = nums[j];
      std::vector<Rational> combos{a + b, a - b, b - a, a * b};
      if (!b.is_zero()) combos.push_back(a / b);
      if (!a.is_zero()) combos.push_back(b / a);
      for (const Rational& r : combos) {
        rest.push_back(r);
        collect_results(rest, out);
        rest.pop_back();
      }
    }
  }
}

}  // namespace

Game24State g24_make_state(const std::vector<Rational>& numbers) {
  if (numbers.empty() || numbers.size() > 4)
    throw std::invalid_argument("game24 state must hold 1..4 numbers");
  Game24State s;
  s.numbers = numbers;
  std::sort(s.numbers.begin(), s.numbers.end());
  return s;
}

std::vector<Game24Action> g24_actions(const Game24State& state) {
  std::vector<Game24Action> acts;
  const auto& nums = state.numbers;
  if (nums.size() < 2) return acts;
  for (size_t i = 0; i < nums.size(); ++i) {
    for (size_t j = i + 1; j < nums.size(); ++j) {
      const Rational a = nums[i];
      const Rational b = nums[j];
      std::vector<Game24Action> cand;
      cand.push_back({G24Op::add, a, b});
      cand.push_back({G24Op::sub, a, b});
      cand.push_back({G24Op::sub, b, a});
      cand.push_back({G24Op::mul, a, b});
      if (!b.is_zero()) cand.push_back({G24Op::div, a, b});
      if (!a.is_zero()) cand.push_back({G24Op::div, b, a});
      for (const auto& c : cand)
        if (!contains_pair(acts, c)) acts.push_back(c);
    }
  }
  return acts;
}

Game24State g24_apply(const Game24State& state, const Game24Action& action) {
  if (action.op == G24Op::div && action.rhs.is_zero())
    throw std::invalid_argument("division by zero");
  Game24State next;
  next.numbers = state.numbers;
  remove_one(next.numbers, action.lhs);
  remove_one(next.numbers, action.rhs);
  const Rational r = eval_op(action.op, action.lhs, action.rhs);
  next.numbers.push_back(r);
  std::sort(next.numbers.begin(), next.numbers.end());
  next.history = state.history;
  next.history.push_back(g24_render_action(action) + " = " + r.str());
  return next;
}

bool g24_is_goal(const Game24State& state) {
  return state.numbers.size() == 1 && state.numbers[0] == Rational(24);
}

std::string g24_key(const Game24State& state) {
  std::ostringstream out;
  for (size_t i = 0; i < state.numbers.size(); ++i) {
    if (i > 0) out << ",";
    out << state.numbers[i].str();
  }
  return out.str();
}

char g24_op_char(G24Op op) {
  switch (op) {
    case G24Op::add: return '+';
    case G24Op::sub: return '-';
    case G24Op::mul: return '*';
    case G24Op::div: return '/';
  }
  return '?';
}

std::string g24_render_action(const Game24Action& action) {
  return action.lhs.str() + " " + g24_op_char(action.op) + " " + action.rhs.str();
}

std::optional<Game24Action> g24_parse_action(const std::string& text) {
  std::string t = text;
  size_t eq = t.find('=');
  if (eq != std::string::npos) t = t.substr(0, eq);
  std::istringstream in(t);
  auto read_rational = [&](Rational& out) -> bool {
    long long num = 0;
    if (!(in >> num)) return false;
    if (in.peek() == '/') {
      in.get();
      long long den = 0;
      if (!(in >> den) || den == 0) return false;
      out = Rational(num, den);
    } else {
      out = Rational(num);
    }
    return true;
  };
  Rational lhs, rhs;
  char op = 0;
  if (!read_rational(lhs)) return std::nullopt;
  if (!(in >> op)) return std::nullopt;
  if (!read_rational(rhs)) return std::nullopt;
  G24Op kind;
  switch (op) {
    case '+': kind = G24Op::add; break;
    case '-': kind = G24Op::sub; break;
    case '*': kind = G24Op::mul; break;
    case 'x': kind = G24Op::mul; break;
    case '/': kind = G24Op::div; break;
    default: return std::nullopt;
  }
  if (kind == G24Op::div && rhs.is_zero()) return std::nullopt;
  return Game24Action{kind, lhs, rhs};
}

double g24_min_expr_gap(const std::vector<Rational>& numbers) {
  if (numbers.empty()) return std::numeric_limits<double>::infinity();

  // Memoized per multiset; validation reuses the same handful of states.
  static std::mutex mu;
  static std::map<std::string, double> cache;
  std::vector<Rational> sorted = numbers;
  std::sort(sorted.begin(), sorted.end());
  std::ostringstream key;
  for (const auto& r : sorted) key << r.str() << ",";
  {
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key.str());
    if (it != cache.end()) return it->second;
  }

  std::vector<Rational> results;
  collect_results(sorted, results);
  const Rational target(24);
  double best = std::numeric_limits<double>::infinity();
  for (const Rational& r : results) {
    const Rational diff = r - target;
    double gap = std::fabs(diff.to_double());
    if (diff.is_zero()) gap = 0.0;
    best = std::min(best, gap);
  }
  {
    std::lock_guard<std::mutex> lock(mu);
    cache[key.str()] = best;
  }
  return best;
}

bool g24_expression_solvable(const std::vector<Rational>& numbers) {
  std::vector<Rational> sorted = numbers;
  std::sort(sorted.begin(), sorted.end());
  std::vector<Rational> results;
  collect_results(sorted, results);
  const Rational target(24);
  return std::any_of(results.begin(), results.end(),
                     [&](const Rational& r) { return r == target; });
}

}  // namespace autohd
