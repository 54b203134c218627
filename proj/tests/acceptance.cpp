// Acceptance suite: runs every release criterion at its stated tolerance and
// prints one PASS/FAIL line per criterion. Exits nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>

#include "autohd/bench.hpp"
#include "autohd/blocksworld.hpp"
#include "autohd/cube.hpp"
#include "autohd/domains.hpp"
#include "autohd/evolution.hpp"
#include "autohd/game24.hpp"
#include "autohd/gateway.hpp"
#include "autohd/search.hpp"

using namespace autohd;
namespace fs = std::filesystem;

namespace {

int failures = 0;

class Criterion {
 public:
  Criterion(int number, std::string name, double budget_seconds)
      : number_(number), name_(std::move(name)), budget_seconds_(budget_seconds),
        start_(std::chrono::steady_clock::now()) {}

  void require(bool ok, const std::string& detail) {
    if (!ok) {
      passed_ = false;
      details_.push_back(detail);
    }
  }

  void note(const std::string& detail) { notes_.push_back(detail); }

  ~Criterion() {
    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    if (budget_seconds_ > 0 && elapsed > budget_seconds_) {
      passed_ = false;
      details_.push_back("runtime " + format(elapsed) + "s exceeds " + format(budget_seconds_) +
                         "s");
    }
    std::printf("[%s] criterion %d: %s (%.1fs", passed_ ? "PASS" : "FAIL", number_,
                name_.c_str(), elapsed);
    if (budget_seconds_ > 0) std::printf(" < %.0fs", budget_seconds_);
    std::printf(")\n");
    for (const std::string& note : notes_) std::printf("       %s\n", note.c_str());
    for (const std::string& detail : details_) std::printf("       !! %s\n", detail.c_str());
    if (!passed_) ++failures;
  }

 private:
  static std::string format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.1f", v);
    return buf;
  }

  int number_;
  std::string name_;
  double budget_seconds_;
  std::chrono::steady_clock::time_point start_;
  bool passed_ = true;
  std::vector<std::string> details_;
  std::vector<std::string> notes_;
};

std::vector<PlanningTask> cube80() {
  static std::vector<PlanningTask> tasks = [] {
    DatasetSpec spec;
    spec.bucket_counts = {{1, 20}, {2, 20}, {3, 20}, {4, 20}};
    return gen_dataset(DomainId::cube2x2, spec, 20260811);
  }();
  return tasks;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

// Criterion 1: A* with the face-count heuristic solves all 80 oracle-verified
// scrambles (20 per optimal depth 1..4) under the 11-move cap.
void criterion_1() {
  Criterion c(1, "cube completeness via A* + cube_nonuniform_faces", 30.0);
  const auto tasks = cube80();
  c.require(tasks.size() == 80, "dataset must hold 80 instances");

  RunConfig cfg;
  cfg.domain = DomainId::cube2x2;
  cfg.heuristic.spec = "builtin:cube_nonuniform_faces";
  cfg.search = default_config(DomainId::cube2x2);
  cfg.search.algorithm = Algorithm::astar;
  cfg.search.depth_cap = 11;
  cfg.search_overrides = true;
  const BenchReport report = run_bench(cfg, tasks);
  c.require(report.metrics.accuracy == 1.0,
            "accuracy " + std::to_string(report.metrics.accuracy) + " != 1.0");
  for (const InstanceOutcome& o : report.outcomes) {
    c.require(o.validated, "instance " + o.instance_id + " did not produce a valid plan");
    c.require(o.plan_length <= 11, "instance " + o.instance_id + " exceeded the 11-move cap");
  }
  char note[128];
  std::snprintf(note, sizeof(note), "accuracy %.3f over %d instances, mean expansions %.1f",
                report.metrics.accuracy, report.metrics.instances,
                report.metrics.mean_expansions);
  c.note(note);
}

// Criterion 2: A* with the zero heuristic returns oracle-optimal plan lengths
// on the cube set plus 30 blocksworld instances (10 each at steps 2/4/6).
void criterion_2() {
  Criterion c(2, "uninformed A* matches oracle optimal depths", 120.0);

  auto tasks = cube80();
  DatasetSpec bw_spec;
  bw_spec.bucket_counts = {{2, 10}, {4, 10}, {6, 10}};
  bw_spec.blocks = 4;
  const auto bw_tasks = gen_dataset(DomainId::blocksworld, bw_spec, 77);
  c.require(bw_tasks.size() == 30, "blocksworld set must hold 30 instances");

  int checked = 0;
  for (const PlanningTask& task : tasks) {
    const WorldModel model = ground_truth_model(task.domain);
    const CompileResult zero = parse_program("0", task.domain);
    SearchConfig cfg = default_config(task.domain);
    cfg.algorithm = Algorithm::astar;
    cfg.expansion_budget = 300000;
    const SearchResult result = astar(task, model, *zero.heuristic, cfg);
    c.require(result.status == SearchStatus::solved, "unsolved: " + task.instance_id);
    if (result.status == SearchStatus::solved) {
      c.require(result.plans[0].length() == *task.optimal_depth,
                task.instance_id + ": plan length " +
                    std::to_string(result.plans[0].length()) + " != optimal " +
                    std::to_string(*task.optimal_depth));
      ++checked;
    }
  }
  for (const PlanningTask& task : bw_tasks) {
    const WorldModel model = ground_truth_model(task.domain);
    const CompileResult zero = parse_program("0", task.domain);
    SearchConfig cfg = default_config(task.domain);
    cfg.algorithm = Algorithm::astar;
    cfg.expansion_budget = 300000;
    const SearchResult result = astar(task, model, *zero.heuristic, cfg);
    c.require(result.status == SearchStatus::solved, "unsolved: " + task.instance_id);
    if (result.status == SearchStatus::solved) {
      c.require(result.plans[0].length() == *task.optimal_depth,
                task.instance_id + ": plan length " +
                    std::to_string(result.plans[0].length()) + " != optimal " +
                    std::to_string(*task.optimal_depth));
      ++checked;
    }
  }
  c.note("optimal plan lengths on " + std::to_string(checked) + "/110 instances");
}

// Criterion 3: Greedy BFS with the expression-gap heuristic solves 100
// oracle-solvable quadruples within the 200-expansion budget.
void criterion_3() {
  Criterion c(3, "game24 completeness via greedy + g24_min_expr_gap", 120.0);
  DatasetSpec spec;
  spec.count = 100;
  const auto tasks = gen_dataset(DomainId::game24, spec, 4242);
  c.require(tasks.size() == 100, "dataset must hold 100 instances");

  RunConfig cfg;
  cfg.domain = DomainId::game24;
  cfg.heuristic.spec = "builtin:g24_min_expr_gap";
  cfg.search.algorithm = Algorithm::greedy_bfs;
  const BenchReport report = run_bench(cfg, tasks);  // domain default budget: 200
  c.require(report.metrics.accuracy == 1.0,
            "accuracy " + std::to_string(report.metrics.accuracy) + " != 1.0");
  long max_expansions = 0;
  for (const InstanceOutcome& o : report.outcomes)
    max_expansions = std::max(max_expansions, o.stats.expansions);
  c.require(max_expansions <= 200, "expansion budget of 200 was exceeded");
  char note[128];
  std::snprintf(note, sizeof(note), "accuracy %.3f, max expansions %ld",
                report.metrics.accuracy, max_expansions);
  c.note(note);
}

// Criterion 4: A* with the misplaced+distance heuristic solves >= 95% of 60
// blocksworld instances (20 per step bucket 2/4/6) at default budgets; the
// 2-step bucket must be perfect.
void criterion_4() {
  Criterion c(4, "blocksworld reference run via A* + bw_misplaced_plus_distance", 120.0);
  DatasetSpec spec;
  spec.bucket_counts = {{2, 20}, {4, 20}, {6, 20}};
  spec.blocks = 5;
  const auto tasks = gen_dataset(DomainId::blocksworld, spec, 9090);
  c.require(tasks.size() == 60, "dataset must hold 60 instances");

  RunConfig cfg;
  cfg.domain = DomainId::blocksworld;
  cfg.heuristic.spec = "builtin:bw_misplaced_plus_distance";
  cfg.search.algorithm = Algorithm::astar;
  const BenchReport report = run_bench(cfg, tasks);  // default budget 600
  c.require(report.metrics.accuracy >= 0.95,
            "accuracy " + std::to_string(report.metrics.accuracy) + " < 0.95");
  c.require(report.metrics.per_bucket.at(2) == 1.0, "2-step bucket below 100%");
  char note[160];
  std::snprintf(note, sizeof(note),
                "accuracy %.3f (step2 %.2f, step4 %.2f, step6 %.2f), mean expansions %.1f",
                report.metrics.accuracy, report.metrics.per_bucket.at(2),
                report.metrics.per_bucket.at(4), report.metrics.per_bucket.at(6),
                report.metrics.mean_expansions);
  c.note(note);
}

// Criterion 5: stub evolution, b=4, K=5 over a 10-instance cube validation
// set: running-max accuracy nondecreasing, final >= generation-0 best, and
// bit-identical archives across two seeded runs.
void criterion_5() {
  Criterion c(5, "evolution pipeline determinism and monotone running max", 180.0);
  DatasetSpec spec;
  spec.bucket_counts = {{1, 3}, {2, 3}, {3, 2}, {4, 2}};
  const auto validation = gen_dataset(DomainId::cube2x2, spec, 5150);
  c.require(validation.size() == 10, "validation set must hold 10 instances");

  EvolutionConfig cfg;
  cfg.b = 4;
  cfg.generations = 5;
  cfg.seed = 31337;
  cfg.search = default_config(DomainId::cube2x2);
  cfg.search.algorithm = Algorithm::astar;

  auto gen1 = make_stub_generator(DomainId::cube2x2, cfg.seed);
  const Archive archive = evolve(*gen1, DomainId::cube2x2, validation, cfg);
  c.require(archive.generations.size() == 6, "expected K+1 = 6 generation records");

  double running = -1.0;
  bool monotone = true;
  for (const GenerationRecord& rec : archive.generations) {
    const double next = std::max(running, rec.best.validation_accuracy);
    if (next < running) monotone = false;
    running = next;
  }
  c.require(monotone, "running-max accuracy decreased");
  c.require(archive.global_best.validation_accuracy == running,
            "global best is not the running max");
  c.require(archive.global_best.validation_accuracy >=
                archive.generations.front().best.validation_accuracy,
            "global best fell below the generation-0 best");

  auto gen2 = make_stub_generator(DomainId::cube2x2, cfg.seed);
  const Archive again = evolve(*gen2, DomainId::cube2x2, validation, cfg);
  c.require(archive_to_json(archive) == archive_to_json(again),
            "two seeded runs produced different archives");
  char note[128];
  std::snprintf(note, sizeof(note), "global best accuracy %.3f born in generation %d",
                archive.global_best.validation_accuracy,
                archive.global_best.generation_born);
  c.note(note);
}

// Criterion 6: the ablation harness produces a two-algorithm report over
// identical datasets with every emitted plan validating.
void criterion_6() {
  Criterion c(6, "greedy vs A* ablation report", 0.0);
  DatasetSpec spec;
  spec.bucket_counts = {{1, 5}, {2, 5}, {3, 5}, {4, 5}};
  const auto tasks = gen_dataset(DomainId::cube2x2, spec, 616);

  std::vector<Metrics> rows;
  for (Algorithm alg : {Algorithm::greedy_bfs, Algorithm::astar}) {
    RunConfig cfg;
    cfg.domain = DomainId::cube2x2;
    cfg.heuristic.spec = "builtin:cube_nonuniform_faces";
    cfg.search.algorithm = alg;
    BenchReport report = run_bench(cfg, tasks);
    for (const InstanceOutcome& o : report.outcomes)
      if (o.solved) c.require(o.validated, "plan failed validation: " + o.instance_id);
    report.metrics.label = algorithm_name(alg);
    rows.push_back(report.metrics);
  }
  const std::string markdown = report_markdown(rows);
  c.require(markdown.find("greedy_bfs") != std::string::npos, "greedy row missing");
  c.require(markdown.find("astar") != std::string::npos, "astar row missing");
  for (int b = 1; b <= 4; ++b)
    c.require(markdown.find("step " + std::to_string(b)) != std::string::npos,
              "bucket column missing: " + std::to_string(b));
  const std::vector<Metrics> reparsed = parse_report_csv(report_csv(rows));
  c.require(reparsed.size() == 2 && reparsed[0].accuracy == rows[0].accuracy &&
                reparsed[1].accuracy == rows[1].accuracy,
            "CSV did not round-trip");
  c.note("rows: greedy_bfs accuracy " + std::to_string(rows[0].accuracy) + ", astar accuracy " +
         std::to_string(rows[1].accuracy));
}

// Criterion 7: invariant suites at full scale.
void criterion_7() {
  Criterion c(7, "invariant suites (cube group, parser round-trip, DSL fuzz, argmin scaling)",
              0.0);

  // Cube permutation group: order 4, inverses, half = quarter^2, colors.
  std::mt19937_64 rng(8128);
  for (CubeFace face : {CubeFace::U, CubeFace::R, CubeFace::F, CubeFace::D, CubeFace::L,
                        CubeFace::B}) {
    const CubeState s = cube_scramble(8, rng()).state;
    CubeState four = s;
    for (int i = 0; i < 4; ++i) four = cube_apply(four, {face, CubeTurn::cw90});
    c.require(four == s, "quarter turn order != 4");
    c.require(cube_apply(cube_apply(s, {face, CubeTurn::cw90}), {face, CubeTurn::ccw90}) == s,
              "cw/ccw are not inverses");
    c.require(cube_apply(cube_apply(s, {face, CubeTurn::cw90}), {face, CubeTurn::cw90}) ==
                  cube_apply(s, {face, CubeTurn::half}),
              "half turn != two quarter turns");
    for (const CubeMove& m : cube_moves(CubeMoveSet::full18)) {
      try {
        cube_check(cube_apply(s, m));
      } catch (const std::exception& e) {
        c.require(false, std::string("color multiset broken: ") + e.what());
      }
    }
  }

  // Blocksworld parser round-trip on 1,000 random states.
  {
    std::mt19937_64 bw_rng(606);
    int ok = 0;
    for (int i = 0; i < 1000; ++i) {
      BlocksState state;
      const int blocks = 2 + static_cast<int>(bw_rng() % 5);
      for (int bi = 0; bi < blocks; ++bi) {
        const std::string name = "b" + std::to_string(bi);
        const std::uint64_t choice = bw_rng() % (state.stacks.size() + 2);
        if (!state.holding && bw_rng() % 5 == 0)
          state.holding = name;
        else if (choice >= state.stacks.size())
          state.stacks.push_back({name});
        else
          state.stacks[choice].push_back(name);
      }
      std::sort(state.stacks.begin(), state.stacks.end(),
                [](const auto& a, const auto& b) { return a.front() < b.front(); });
      if (bw_parse_state(bw_render_state(state)) == state) ++ok;
    }
    c.require(ok == 1000, "parser round-trip failed on " + std::to_string(1000 - ok) +
                              " of 1000 states");
  }

  // DSL fuzz totality on 10,000 generated programs.
  {
    const EncodedState cube_state = encode_state(cube_scramble(4, 99).state);
    const EncodedState g24_state =
        encode_state(g24_make_state({Rational(3), Rational(8), Rational(8)}));
    const EncodedState bw_state = encode_state(bw_parse_state(
        "the red block is clear, the hand is empty, the red block is on top of the blue "
        "block, and the blue block is on the table"));
    const GoalSpec bw_goal = bw_parse_goal("the blue block is on top of the red block");

    dsl::EvalLimits limits;
    limits.step_budget = 20000;
    limits.max_collection_size = 500;

    // Compact grammar-directed generator (mirrors the unit-test one).
    std::function<std::string(std::mt19937_64&, std::vector<std::string>&, int)> gen_expr =
        [&](std::mt19937_64& r, std::vector<std::string>& ids, int depth) -> std::string {
      auto atom = [&]() -> std::string {
        if (r() % 2 == 0) return std::to_string(r() % 40);
        return ids[r() % ids.size()];
      };
      if (depth > 4) return atom();
      switch (r() % 9) {
        case 0: {
          const std::string v = "v" + std::to_string(depth);
          const std::string bound = gen_expr(r, ids, depth + 1);
          ids.push_back(v);
          const std::string body = gen_expr(r, ids, depth + 1);
          ids.pop_back();
          return "let " + v + " = " + bound + " in " + body;
        }
        case 1: return "if (" + gen_expr(r, ids, depth + 1) + ") == (" +
                       gen_expr(r, ids, depth + 1) + ") then " + gen_expr(r, ids, depth + 1) +
                       " else " + gen_expr(r, ids, depth + 1);
        case 2: {
          static const char* ops[] = {"+", "-", "*", "/", "<", ">=", "and", "or", "!="};
          return "(" + gen_expr(r, ids, depth + 1) + ") " + ops[r() % 9] + " (" +
                 gen_expr(r, ids, depth + 1) + ")";
        }
        case 3: return "abs(" + gen_expr(r, ids, depth + 1) + ")";
        case 4: return "sum(" + gen_expr(r, ids, depth + 1) + ")";
        case 5: return "range(" + gen_expr(r, ids, depth + 1) + ")";
        case 6: {
          const std::string v = "m" + std::to_string(depth);
          const std::string coll = gen_expr(r, ids, depth + 1);
          ids.push_back(v);
          const std::string body = gen_expr(r, ids, depth + 1);
          ids.pop_back();
          return "map(" + v + " in " + coll + ", " + body + ")";
        }
        case 7: return "nth(" + gen_expr(r, ids, depth + 1) + ", " +
                       gen_expr(r, ids, depth + 1) + ")";
        default: return atom();
      }
    };

    int evaluated = 0;
    for (std::uint64_t seed = 0; seed < 10000; ++seed) {
      const DomainId domain = static_cast<DomainId>(seed % 3);
      std::mt19937_64 fr(seed * 6364136223846793005ull + 1);
      std::vector<std::string> ids = domain_bound_names(domain);
      const std::string source = gen_expr(fr, ids, 0);
      const CompileResult r = parse_program(source, domain, limits);
      if (!r.ok()) {
        c.require(false, "fuzz program failed to parse: " + source);
        break;
      }
      const EncodedState& state = domain == DomainId::cube2x2
                                      ? cube_state
                                      : (domain == DomainId::game24 ? g24_state : bw_state);
      const GoalSpec goal = domain == DomainId::cube2x2
                                ? GoalSpec(CubeGoal{})
                                : (domain == DomainId::game24 ? GoalSpec(Game24Goal{})
                                                              : bw_goal);
      const dsl::EvalOutcome outcome = heuristic_value(*r.heuristic, state, goal);
      if (dsl::is_fault(outcome)) {
        const dsl::Fault& fault = std::get<dsl::Fault>(outcome);
        c.require(!dsl::fault_kind_name(fault.kind).empty(), "untyped fault");
      } else {
        const double v = std::get<double>(outcome);
        c.require(v >= 0.0 && !std::isnan(v), "value out of range");
      }
      ++evaluated;
    }
    c.require(evaluated == 10000, "fuzz loop ended early");
  }

  // Greedy pop order is invariant under doubling the heuristic.
  {
    const std::string base = builtin_dsl_source("cube_nonuniform_faces");
    const CompileResult h1 = parse_program(base, DomainId::cube2x2);
    const CompileResult h2 = parse_program("2 * (" + base + ")", DomainId::cube2x2);
    const WorldModel model = ground_truth_model(DomainId::cube2x2);
    std::mt19937_64 scale_rng(515);
    for (int i = 0; i < 10; ++i) {
      PlanningTask task;
      task.domain = DomainId::cube2x2;
      task.initial_state = encode_state(cube_scramble(3, scale_rng()).state);
      task.goal = CubeGoal{};
      SearchConfig cfg = default_config(DomainId::cube2x2, 3);
      cfg.algorithm = Algorithm::greedy_bfs;
      std::vector<std::string> keys1, keys2;
      run_search(task, model, *h1.heuristic, cfg,
                 [&](const ExpansionRecord& rec) { keys1.push_back(rec.state_key); });
      run_search(task, model, *h2.heuristic, cfg,
                 [&](const ExpansionRecord& rec) { keys2.push_back(rec.state_key); });
      c.require(keys1 == keys2, "pop order changed under x2 heuristic scaling");
    }
  }
  c.note("cube group, 1000 parser round-trips, 10000 fuzz programs, 10 scaling runs");
}

// Criterion 8: a full evolve run against recorded fixtures completes with
// zero network calls, prompt templates byte-match their goldens, and no
// api_key bytes reach any artifact.
void criterion_8() {
  Criterion c(8, "gateway offline conformance", 0.0);
  const fs::path dir = fs::temp_directory_path() / "autohd_acceptance_fixtures";
  fs::remove_all(dir);
  fs::create_directories(dir);

  DatasetSpec spec;
  spec.bucket_counts = {{1, 2}, {2, 2}};
  const auto validation = gen_dataset(DomainId::cube2x2, spec, 888);

  EvolutionConfig cfg;
  cfg.b = 3;
  cfg.generations = 2;
  cfg.seed = 4;
  cfg.search = default_config(DomainId::cube2x2);
  cfg.search.algorithm = Algorithm::astar;

  const std::string secret = "sk-accept-test-9f83c0";

  // Responses keyed purely by prompt hash, so recording is reproducible.
  const std::vector<std::string> canned = {
      "Heuristic Description: counts non-uniform faces.\n"
      "```\nsum(map(face in faces(state), if uniform(face) then 0 else 1))\n```",
      "Heuristic Description: counts cells that differ from the first sticker of their face.\n"
      "```\nsum(map(face in faces(state), count(cell in face, cell != nth(face, 0))))\n```",
      "Heuristic Description: weighted face count.\n"
      "```\n2 * (6 - count(face in faces(state), uniform(face)))\n```",
      "Heuristic Description: constant.\n```\n1\n```",
  };
  auto fill = [&](const std::string& prompt) {
    const std::string key = gw::fixture_key(prompt);
    std::uint64_t h = 0;
    for (char ch : key) h = h * 31 + static_cast<unsigned char>(ch);
    return canned[h % canned.size()];
  };

  std::string recorded_json;
  {
    auto recorder = std::shared_ptr<gw::CompletionClient>(
        gw::make_fixture_client(dir.string(), fill));
    auto port = gw::make_llm_generator(recorder, DomainId::cube2x2);
    const Archive archive = evolve(*port, DomainId::cube2x2, validation, cfg);
    recorded_json = archive_to_json(archive);
    c.require(recorder->stats().network_calls == 0, "recording run touched the network");
  }

  // Replay: no fill policy, so every completion must come from the fixtures.
  {
    auto replayer = std::shared_ptr<gw::CompletionClient>(
        gw::make_fixture_client(dir.string()));
    auto port = gw::make_llm_generator(replayer, DomainId::cube2x2);
    try {
      const Archive archive = evolve(*port, DomainId::cube2x2, validation, cfg);
      c.require(replayer->stats().network_calls == 0, "replay run touched the network");
      c.require(replayer->stats().fixture_hits > 0, "replay run hit no fixtures");
      c.require(archive_to_json(archive) == recorded_json,
                "replayed archive differs from the recorded one");

      const fs::path archive_path = dir / "archive.json";
      std::ofstream(archive_path) << archive_to_json(archive);
      c.require(slurp(archive_path).find(secret) == std::string::npos,
                "api key bytes leaked into the archive");
    } catch (const gw::GatewayError& e) {
      c.require(false, std::string("replay run failed: ") + e.what());
    }
  }

  // Rendered prompt templates byte-match the goldens shipped with the tests.
  const fs::path golden = fs::path(AUTOHD_SOURCE_DIR) / "tests" / "golden" / "prompts";
  for (const char* name : {"propose_blocksworld", "propose_game24", "propose_cube2x2"}) {
    const std::string rendered = gw::render_prompt(gw::prompt_template(name), {});
    c.require(slurp(golden / (std::string(name) + ".txt")) == rendered,
              std::string("golden mismatch: ") + name);
  }

  // Endpoint serialization and every fixture/artifact stays key-free.
  gw::ModelEndpoint endpoint;
  endpoint.base_url = "http://localhost:9/v1";
  endpoint.api_key = secret;
  c.require(gw::endpoint_to_json(endpoint).find(secret) == std::string::npos,
            "api key bytes leaked from endpoint serialization");
  for (const auto& entry : fs::directory_iterator(dir))
    c.require(slurp(entry.path()).find(secret) == std::string::npos,
              "api key bytes leaked into " + entry.path().string());

  fs::remove_all(dir);
  c.note("offline evolve replayed bit-identically from fixtures");
}

}  // namespace

int main() {
  std::printf("acceptance suite\n================\n");
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  if (failures > 0) {
    std::printf("\n%d criterion(s) FAILED\n", failures);
    return 1;
  }
  std::printf("\nall criteria passed\n");
  return 0;
}
