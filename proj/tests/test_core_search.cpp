#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "autohd/bench.hpp"
#include "autohd/blocksworld.hpp"
#include "autohd/cube.hpp"
#include "autohd/domains.hpp"
#include "autohd/game24.hpp"
#include "autohd/search.hpp"

using namespace autohd;

namespace {

PlanningTask g24_task(std::vector<Rational> numbers, const std::string& id = "t") {
  PlanningTask task;
  task.domain = DomainId::game24;
  task.initial_state = encode_state(g24_make_state(numbers));
  task.goal = Game24Goal{};
  task.instance_id = id;
  task.optimal_depth = static_cast<int>(numbers.size()) - 1;
  return task;
}

PlanningTask cube_task(const CubeState& cube, std::optional<int> depth = std::nullopt) {
  PlanningTask task;
  task.domain = DomainId::cube2x2;
  task.initial_state = encode_state(cube);
  task.goal = CubeGoal{};
  task.optimal_depth = depth;
  return task;
}

PlanningTask bw_task(const std::string& init, const std::string& goal) {
  PlanningTask task;
  task.domain = DomainId::blocksworld;
  task.initial_state = encode_state(bw_parse_state(init));
  task.goal = bw_parse_goal(goal);
  return task;
}

std::vector<std::string> pop_keys(const PlanningTask& task, const WorldModel& model,
                                  const CompiledHeuristic& h, const SearchConfig& cfg) {
  std::vector<std::string> keys;
  run_search(task, model, h, cfg,
             [&](const ExpansionRecord& rec) { keys.push_back(rec.state_key); });
  return keys;
}

}  // namespace

TEST_CASE("score_successors on a terminal game24 state is empty") {
  const WorldModel model = ground_truth_model(DomainId::game24);
  const CompiledHeuristic h = compile(builtin("g24_min_expr_gap"));
  const auto scores =
      score_successors(encode_state(g24_make_state({Rational(24)})), Game24Goal{}, model, h);
  CHECK(scores.items.empty());
  CHECK(scores.heuristic_faults == 0);
}

TEST_CASE("score_successors enumerates all six game24 children, the product at 0") {
  const WorldModel model = ground_truth_model(DomainId::game24);
  const CompiledHeuristic h = compile(builtin("g24_min_expr_gap"));
  const auto scores =
      score_successors(encode_state(g24_make_state({Rational(4), Rational(6)})), Game24Goal{},
                       model, h);
  REQUIRE(scores.items.size() == 6);
  int zero_scored = 0;
  for (const auto& item : scores.items) {
    if (item.next.key == "24") {
      CHECK(item.value == 0.0);
      ++zero_scored;
    }
  }
  CHECK(zero_scored == 1);
}

TEST_CASE("score_successors on the solved cube scores every child at least 1") {
  const WorldModel model = ground_truth_model(DomainId::cube2x2);
  const CompiledHeuristic h = compile(builtin("cube_nonuniform_faces"));
  const auto scores =
      score_successors(encode_state(cube_solved_state()), CubeGoal{}, model, h);
  REQUIRE(scores.items.size() == 18);
  for (const auto& item : scores.items) CHECK(item.value >= 1.0);
}

TEST_CASE("score_successors folds heuristic faults into +inf") {
  const WorldModel model = ground_truth_model(DomainId::game24);
  CompileResult r = parse_program("1 / 0", DomainId::game24);
  const auto scores = score_successors(encode_state(g24_make_state({Rational(4), Rational(6)})),
                                       Game24Goal{}, model, *r.heuristic);
  REQUIRE(scores.items.size() == 6);
  for (const auto& item : scores.items) CHECK(std::isinf(item.value));
  CHECK(scores.heuristic_faults == 6);
}

TEST_CASE("validate_plan accepts a zero-step solution") {
  PlanningTask task = g24_task({Rational(24)});
  PlanTrace trace;
  trace.origin = task.initial_state;
  const auto report = validate_plan(task, trace, ground_truth_model(DomainId::game24));
  CHECK(report.valid);
}

TEST_CASE("validate_plan flags an empty trace with an unmet goal") {
  PlanningTask task = g24_task({Rational(4), Rational(6)});
  PlanTrace trace;
  trace.origin = task.initial_state;
  const auto report = validate_plan(task, trace, ground_truth_model(DomainId::game24));
  CHECK_FALSE(report.valid);
  CHECK(report.reason == "no actions, goal unmet");
}

TEST_CASE("validate_plan accepts oracle plans and rejects truncations") {
  PlanningTask task = bw_task(
      "the red block is clear, the yellow block is clear, the hand is empty, the red block is "
      "on top of the blue block, the yellow block is on top of the orange block, the blue "
      "block is on the table and the orange block is on the table",
      "the red block is clear, the hand is empty, the red block is on top of the blue block, "
      "the yellow block is on the table and the orange block is on the table");
  const WorldModel model = ground_truth_model(DomainId::blocksworld);
  const OracleResult oracle = oracle_solve(task, 6);
  REQUIRE(oracle.optimal_depth == 2);

  CHECK(validate_plan(task, oracle.plan, model).valid);

  PlanTrace truncated = oracle.plan;
  truncated.steps.pop_back();
  const auto report = validate_plan(task, truncated, model);
  CHECK_FALSE(report.valid);
  CHECK(report.reason.find("goal unmet") != std::string::npos);

  PlanTrace corrupted = oracle.plan;
  corrupted.steps[1].first = EncodedAction{DomainId::blocksworld,
                                           BwAction{BwKind::pickup, "red", std::nullopt}};
  CHECK_FALSE(validate_plan(task, corrupted, model).valid);
}

TEST_CASE("search returns the empty plan when the start satisfies the goal") {
  PlanningTask task = cube_task(cube_solved_state(), 0);
  const WorldModel model = ground_truth_model(DomainId::cube2x2);
  const CompiledHeuristic h = compile(builtin("cube_nonuniform_faces"));
  for (Algorithm alg : {Algorithm::greedy_bfs, Algorithm::astar}) {
    SearchConfig cfg = default_config(DomainId::cube2x2);
    cfg.algorithm = alg;
    const SearchResult result = run_search(task, model, h, cfg);
    CHECK(result.status == SearchStatus::solved);
    REQUIRE(result.plans.size() == 1);
    CHECK(result.plans[0].steps.empty());
    CHECK(result.stats.expansions == 0);
  }
}

TEST_CASE("greedy solves [4,6] detecting the goal at generation") {
  PlanningTask task = g24_task({Rational(4), Rational(6)});
  const WorldModel model = ground_truth_model(DomainId::game24);
  const CompiledHeuristic h = compile(builtin("g24_min_expr_gap"));
  SearchConfig cfg = default_config(DomainId::game24, task.optimal_depth);
  cfg.algorithm = Algorithm::greedy_bfs;
  cfg.expansion_budget = 10;
  const SearchResult result = greedy_bfs(task, model, h, cfg);
  REQUIRE(result.status == SearchStatus::solved);
  CHECK(result.stats.expansions <= 1);
  REQUIRE(result.plans.size() == 1);
  REQUIRE(result.plans[0].length() == 1);
  const auto& g24 = std::get<Game24State>(result.plans[0].final_state().payload);
  REQUIRE(g24.history.size() == 1);
  CHECK(g24.history[0] == "4 * 6 = 24");
}

TEST_CASE("a depth-1 scramble solves with a single move") {
  const CubeScramble scramble = cube_scramble(1, 7);
  PlanningTask task = cube_task(scramble.state, 1);
  const WorldModel model = ground_truth_model(DomainId::cube2x2);
  const CompiledHeuristic h = compile(builtin("cube_nonuniform_faces"));
  for (Algorithm alg : {Algorithm::greedy_bfs, Algorithm::astar}) {
    SearchConfig cfg = default_config(DomainId::cube2x2, 1);
    cfg.algorithm = alg;
    const SearchResult result = run_search(task, model, h, cfg);
    REQUIRE(result.status == SearchStatus::solved);
    CHECK(result.plans[0].length() == 1);
    CHECK(result.stats.expansions <= 1);  // goal found on generation
    CHECK(validate_plan(task, result.plans[0], model).valid);
  }
}

TEST_CASE("astar with the zero heuristic matches oracle optimal depths") {
  const CompileResult zero = parse_program("0", DomainId::cube2x2);
  const WorldModel model = ground_truth_model(DomainId::cube2x2);
  std::mt19937_64 rng(21);
  for (int depth = 1; depth <= 4; ++depth) {
    for (int i = 0; i < 3; ++i) {
      PlanningTask task = cube_task(cube_scramble(depth, rng()).state);
      const OracleResult oracle = oracle_solve(task, 4);
      REQUIRE(oracle.optimal_depth.has_value());
      SearchConfig cfg = default_config(DomainId::cube2x2);
      cfg.algorithm = Algorithm::astar;
      cfg.expansion_budget = 200000;
      const SearchResult result = astar(task, model, *zero.heuristic, cfg);
      REQUIRE(result.status == SearchStatus::solved);
      CHECK(result.plans[0].length() == *oracle.optimal_depth);
    }
  }
}

TEST_CASE("the two-step blocksworld example solves within depth 4") {
  PlanningTask task = bw_task(
      "the red block is clear, the yellow block is clear, the hand is empty, the red block is "
      "on top of the blue block, the yellow block is on top of the orange block, the blue "
      "block is on the table and the orange block is on the table",
      "the yellow block is clear, the hand is empty, the red block is on top of the blue "
      "block, the yellow block is on the table and the orange block is on the table");
  const OracleResult oracle = oracle_solve(task, 4);
  REQUIRE(oracle.optimal_depth == 2);
  task.optimal_depth = oracle.optimal_depth;

  const WorldModel model = ground_truth_model(DomainId::blocksworld);
  const CompiledHeuristic h = compile(builtin("bw_misplaced_plus_distance"));
  SearchConfig cfg = default_config(DomainId::blocksworld, task.optimal_depth);
  CHECK(cfg.depth_cap == 4);
  cfg.algorithm = Algorithm::astar;
  const SearchResult result = astar(task, model, h, cfg);
  REQUIRE(result.status == SearchStatus::solved);
  CHECK(result.plans[0].length() <= 4);
  CHECK(validate_plan(task, result.plans[0], model).valid);
}

TEST_CASE("budget zero exhausts immediately") {
  PlanningTask task = g24_task({Rational(4), Rational(6)});
  const WorldModel model = ground_truth_model(DomainId::game24);
  const CompiledHeuristic h = compile(builtin("g24_min_expr_gap"));
  SearchConfig cfg = default_config(DomainId::game24);
  cfg.expansion_budget = 0;
  for (Algorithm alg : {Algorithm::greedy_bfs, Algorithm::astar}) {
    cfg.algorithm = alg;
    const SearchResult result = run_search(task, model, h, cfg);
    CHECK(result.status == SearchStatus::budget_exhausted);
    CHECK(result.plans.empty());
  }
}

TEST_CASE("an unsolvable quadruple within the cap reports depth_capped") {
  // [1,1,1,1] cannot make 24.
  PlanningTask task = g24_task({Rational(1), Rational(1), Rational(1), Rational(1)});
  task.optimal_depth.reset();
  const WorldModel model = ground_truth_model(DomainId::game24);
  const CompiledHeuristic h = compile(builtin("g24_min_expr_gap"));
  SearchConfig cfg = default_config(DomainId::game24);
  cfg.algorithm = Algorithm::astar;
  cfg.expansion_budget = 100000;
  const SearchResult result = run_search(task, model, h, cfg);
  CHECK(result.status == SearchStatus::depth_capped);
  CHECK(result.plans.empty());
}

TEST_CASE("budget monotonicity: enlarging the budget never flips or reorders a solve") {
  std::mt19937_64 rng(31);
  const WorldModel model = ground_truth_model(DomainId::cube2x2);
  const CompiledHeuristic h = compile(builtin("cube_nonuniform_faces"));
  for (int i = 0; i < 6; ++i) {
    PlanningTask task = cube_task(cube_scramble(3, rng()).state, 3);
    for (Algorithm alg : {Algorithm::greedy_bfs, Algorithm::astar}) {
      SearchConfig small = default_config(DomainId::cube2x2, 3);
      small.algorithm = alg;
      SearchConfig big = small;
      big.expansion_budget *= 4;
      const SearchResult a = run_search(task, model, h, small);
      const SearchResult b = run_search(task, model, h, big);
      if (a.status == SearchStatus::solved) {
        REQUIRE(b.status == SearchStatus::solved);
        REQUIRE(a.plans.size() == b.plans.size());
        CHECK(a.plans[0].final_state().key == b.plans[0].final_state().key);
        CHECK(a.plans[0].length() == b.plans[0].length());
        bool same_actions = a.plans[0].steps.size() == b.plans[0].steps.size();
        for (size_t s = 0; same_actions && s < a.plans[0].steps.size(); ++s)
          same_actions = a.plans[0].steps[s].first == b.plans[0].steps[s].first;
        CHECK(same_actions);
      }
    }
  }
}

TEST_CASE("greedy pop order is invariant under positive scaling of the heuristic") {
  const std::string base = builtin_dsl_source("cube_nonuniform_faces");
  dsl::EvalLimits limits;
  const CompileResult h1 = parse_program(base, DomainId::cube2x2, limits);
  const CompileResult h2 = parse_program("2 * (" + base + ")", DomainId::cube2x2, limits);
  REQUIRE(h1.ok());
  REQUIRE(h2.ok());

  const WorldModel model = ground_truth_model(DomainId::cube2x2);
  std::mt19937_64 rng(41);
  for (int i = 0; i < 5; ++i) {
    PlanningTask task = cube_task(cube_scramble(3, rng()).state, 3);
    SearchConfig cfg = default_config(DomainId::cube2x2, 3);
    cfg.algorithm = Algorithm::greedy_bfs;
    const auto keys1 = pop_keys(task, model, *h1.heuristic, cfg);
    const auto keys2 = pop_keys(task, model, *h2.heuristic, cfg);
    CHECK(keys1 == keys2);
  }
}

TEST_CASE("multi-solution mode returns distinct validated plans") {
  PlanningTask task = g24_task({Rational(1), Rational(2), Rational(3), Rational(4)});
  const WorldModel model = ground_truth_model(DomainId::game24);
  const CompiledHeuristic h = compile(builtin("g24_min_expr_gap"));
  SearchConfig cfg = default_config(DomainId::game24, 3);
  cfg.algorithm = Algorithm::greedy_bfs;
  cfg.num_solutions = 5;
  const SearchResult result = greedy_bfs(task, model, h, cfg);
  REQUIRE(result.status == SearchStatus::solved);
  CHECK(result.plans.size() >= 2);
  CHECK(result.plans.size() <= 5);
  std::set<std::string> action_sequences;
  for (const PlanTrace& plan : result.plans) {
    CHECK(validate_plan(task, plan, model).valid);
    std::string sig;
    for (const auto& [action, state] : plan.steps) sig += action_text(action) + ";";
    action_sequences.insert(sig);
  }
  CHECK(action_sequences.size() == result.plans.size());

  // First plan equals the single-solution plan.
  SearchConfig single = cfg;
  single.num_solutions = 1;
  const SearchResult one = greedy_bfs(task, model, h, single);
  REQUIRE(one.status == SearchStatus::solved);
  CHECK(one.plans[0].final_state().key == result.plans[0].final_state().key);
}

TEST_CASE("replay determinism: equal keys transition to equal keys") {
  std::mt19937_64 rng(51);
  const WorldModel model = ground_truth_model(DomainId::cube2x2);
  for (int i = 0; i < 20; ++i) {
    const std::uint64_t seed = rng();
    const EncodedState a = encode_state(cube_scramble(4, seed).state);
    const EncodedState b = encode_state(cube_scramble(4, seed).state);
    REQUIRE(a.key == b.key);
    for (const EncodedAction& action : model.actions_fn(a))
      CHECK(model.transition_fn(a, action)->key == model.transition_fn(b, action)->key);
  }
}

TEST_CASE("closed loop: every successful search trace validates") {
  std::mt19937_64 rng(61);
  const WorldModel cube_model = ground_truth_model(DomainId::cube2x2);
  const WorldModel g24_model = ground_truth_model(DomainId::game24);
  const CompiledHeuristic cube_h = compile(builtin("cube_nonuniform_faces"));
  const CompiledHeuristic g24_h = compile(builtin("g24_min_expr_gap"));

  for (int i = 0; i < 10; ++i) {
    PlanningTask task = cube_task(cube_scramble(1 + i % 4, rng()).state, 1 + i % 4);
    SearchConfig cfg = default_config(DomainId::cube2x2, task.optimal_depth);
    cfg.algorithm = i % 2 == 0 ? Algorithm::astar : Algorithm::greedy_bfs;
    const SearchResult result = run_search(task, cube_model, cube_h, cfg);
    if (result.status == SearchStatus::solved)
      for (const PlanTrace& plan : result.plans) {
        CHECK(validate_plan(task, plan, cube_model).valid);
        CHECK(plan.length() <= cfg.depth_cap);
      }
  }
  for (int i = 0; i < 10; ++i) {
    std::vector<Rational> nums;
    for (int k = 0; k < 4; ++k) nums.emplace_back(static_cast<std::int64_t>(rng() % 13 + 1));
    if (!g24_expression_solvable(nums)) continue;
    PlanningTask task = g24_task(nums);
    SearchConfig cfg = default_config(DomainId::game24, 3);
    cfg.algorithm = Algorithm::greedy_bfs;
    const SearchResult result = run_search(task, g24_model, g24_h, cfg);
    if (result.status == SearchStatus::solved)
      CHECK(validate_plan(task, result.plans[0], g24_model).valid);
  }
}

TEST_CASE("astar reopens a key only with strictly smaller g") {
  // Pathological heuristic sends A* down a long path first; the duplicate
  // bookkeeping must still never lose the optimal plan.
  PlanningTask task = bw_task(
      "the a block is clear, the b block is clear, the c block is clear, the hand is empty, "
      "the a block is on the table, the b block is on the table and the c block is on the "
      "table",
      "the a block is on top of the b block");
  const WorldModel model = ground_truth_model(DomainId::blocksworld);
  const OracleResult oracle = oracle_solve(task, 6);
  REQUIRE(oracle.optimal_depth == 2);
  const CompileResult zero = parse_program("0", DomainId::blocksworld);
  SearchConfig cfg = default_config(DomainId::blocksworld, 2);
  cfg.algorithm = Algorithm::astar;
  const SearchResult result = astar(task, model, *zero.heuristic, cfg);
  REQUIRE(result.status == SearchStatus::solved);
  CHECK(result.plans[0].length() == 2);
  CHECK(result.stats.duplicate_hits > 0);
}

TEST_CASE("expansion records expose the f = g + h bookkeeping") {
  PlanningTask task = cube_task(cube_scramble(2, 5).state, 2);
  const WorldModel model = ground_truth_model(DomainId::cube2x2);
  const CompiledHeuristic h = compile(builtin("cube_nonuniform_faces"));
  SearchConfig cfg = default_config(DomainId::cube2x2, 2);
  cfg.algorithm = Algorithm::astar;
  std::vector<ExpansionRecord> records;
  run_search(task, model, h, cfg, [&](const ExpansionRecord& r) { records.push_back(r); });
  REQUIRE_FALSE(records.empty());
  CHECK(records[0].g == 0);
  CHECK(records[0].action_in.empty());
  for (const auto& rec : records) CHECK(rec.f == doctest::Approx(rec.g + rec.h));
}
