#include "autohd/bench.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <random>
#include <sstream>
#include <thread>
#include <unordered_map>

#include "autohd/blocksworld.hpp"
#include "autohd/cube.hpp"
#include "autohd/domains.hpp"
#include "autohd/game24.hpp"
#include "autohd/gateway.hpp"

namespace autohd {

namespace {

// Depth-limited DFS with per-iteration best-depth pruning; a state is
// revisited only via a strictly shallower path.
bool oracle_dfs(const EncodedState& state, int g, int limit, const GoalSpec& goal,
                const WorldModel& model, std::unordered_map<std::string, int>& best,
                std::vector<std::pair<EncodedAction, EncodedState>>& path) {
  if (goal_satisfied(state, goal)) return true;
  if (g == limit) return false;
  auto it = best.find(state.key);
  if (it != best.end() && it->second <= g) return false;
  best[state.key] = g;
  for (const EncodedAction& action : model.actions_fn(state)) {
    std::optional<EncodedState> next = model.transition_fn(state, action);
    path.emplace_back(action, std::move(*next));
    if (oracle_dfs(path.back().second, g + 1, limit, goal, model, best, path)) return true;
    path.pop_back();
  }
  return false;
}

std::string color_name(int i) {
  static const std::vector<std::string> names = {"red",    "blue",  "orange", "yellow",
                                                 "white",  "black", "cyan",   "magenta",
                                                 "green",  "violet"};
  if (i < static_cast<int>(names.size())) return names[i];
  return "b" + std::to_string(i);
}

BlocksState random_blocks_state(int blocks, std::mt19937_64& rng) {
  BlocksState state;
  for (int i = 0; i < blocks; ++i) {
    const std::string name = color_name(i);
    const std::uint64_t choice = rng() % static_cast<std::uint64_t>(state.stacks.size() + 1);
    if (choice == state.stacks.size())
      state.stacks.push_back({name});
    else
      state.stacks[choice].push_back(name);
  }
  std::sort(state.stacks.begin(), state.stacks.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return state;
}

PlanningTask make_cube_task(const CubeState& cube, const std::string& id,
                            std::optional<int> depth) {
  PlanningTask task;
  task.domain = DomainId::cube2x2;
  task.initial_state = encode_state(cube);
  task.goal = CubeGoal{};
  task.instance_id = id;
  task.optimal_depth = depth;
  return task;
}

void parallel_for(int jobs, int n, const std::function<void(int)>& body) {
  if (jobs <= 1 || n <= 1) {
    for (int i = 0; i < n; ++i) body(i);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> workers;
  const int worker_count = std::min(jobs, n);
  workers.reserve(static_cast<size_t>(worker_count));
  for (int w = 0; w < worker_count; ++w) {
    workers.emplace_back([&] {
      while (true) {
        const int i = next.fetch_add(1);
        if (i >= n) return;
        body(i);
      }
    });
  }
  for (auto& t : workers) t.join();
}

std::string format_double(double d) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), d);
  (void)ec;
  return std::string(buf, ptr);
}

double parse_double(const std::string& s) {
  double d = 0.0;
  std::from_chars(s.data(), s.data() + s.size(), d);
  return d;
}

}  // namespace

OracleResult oracle_solve(const PlanningTask& task, int cap, CubeMoveSet move_set) {
  const WorldModel model = ground_truth_model(task.domain, move_set);
  OracleResult result;
  result.plan.origin = task.initial_state;

  // game24 cross-check: depth-3 reachability of {24} must agree with direct
  // expression enumeration.
  std::optional<bool> expr_solvable;
  if (task.domain == DomainId::game24)
    expr_solvable =
        g24_expression_solvable(std::get<Game24State>(task.initial_state.payload).numbers);

  for (int limit = 0; limit <= cap; ++limit) {
    std::unordered_map<std::string, int> best;
    std::vector<std::pair<EncodedAction, EncodedState>> path;
    // The DFS recursion keeps references into `path`; pre-sizing to the
    // depth limit keeps them stable.
    path.reserve(static_cast<size_t>(limit) + 1);
    if (oracle_dfs(task.initial_state, 0, limit, task.goal, model, best, path)) {
      result.optimal_depth = static_cast<int>(path.size());
      result.plan.steps = std::move(path);
      break;
    }
  }

  if (expr_solvable.has_value()) {
    const int full_depth =
        static_cast<int>(std::get<Game24State>(task.initial_state.payload).numbers.size()) - 1;
    if (cap >= full_depth && *expr_solvable != result.optimal_depth.has_value())
      throw std::logic_error("game24 oracle cross-check failed for instance '" +
                             task.instance_id + "'");
  }
  return result;
}

std::vector<PlanningTask> gen_dataset(DomainId domain, const DatasetSpec& spec,
                                      std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<PlanningTask> tasks;

  switch (domain) {
    case DomainId::cube2x2: {
      for (const auto& [depth, count] : spec.bucket_counts) {
        if (depth < 1) throw std::invalid_argument("cube bucket depth must be >= 1");
        for (int i = 0; i < count; ++i) {
          bool placed = false;
          for (int attempt = 0; attempt < spec.resample_budget; ++attempt) {
            const CubeScramble scramble = cube_scramble(depth, rng(), spec.move_set);
            PlanningTask task = make_cube_task(
                scramble.state,
                "cube-d" + std::to_string(depth) + "-" + std::to_string(i), depth);
            const OracleResult oracle = oracle_solve(task, depth, spec.move_set);
            if (oracle.optimal_depth == depth) {
              tasks.push_back(std::move(task));
              placed = true;
              break;
            }
          }
          if (!placed)
            throw std::runtime_error("cube bucket depth " + std::to_string(depth) +
                                     " unreachable within the resample budget");
        }
      }
      break;
    }
    case DomainId::blocksworld: {
      const WorldModel model = ground_truth_model(domain);
      for (const auto& [steps, count] : spec.bucket_counts) {
        if (steps < 1) throw std::invalid_argument("blocksworld walk length must be >= 1");
        if (steps % 2 != 0)
          throw std::invalid_argument(
              "blocksworld buckets use even walk lengths (each block move is two actions)");
        for (int i = 0; i < count; ++i) {
          bool placed = false;
          for (int attempt = 0; attempt < spec.resample_budget; ++attempt) {
            const BlocksState init = random_blocks_state(spec.blocks, rng);
            EncodedState cur = encode_state(init);
            for (int s = 0; s < steps; ++s) {
              const auto actions = model.actions_fn(cur);
              cur = *model.transition_fn(cur, actions[rng() % actions.size()]);
            }
            const BlocksState& end = std::get<BlocksState>(cur.payload);
            if (end == init) continue;
            PlanningTask task;
            task.domain = domain;
            task.initial_state = encode_state(init);
            task.goal = bw_parse_goal(bw_render_state(end));
            task.instance_id = "bw-s" + std::to_string(steps) + "-" + std::to_string(i);
            if (goal_satisfied(task.initial_state, task.goal)) continue;
            const OracleResult oracle = oracle_solve(task, steps);
            if (oracle.optimal_depth == steps) {
              task.optimal_depth = steps;
              tasks.push_back(std::move(task));
              placed = true;
              break;
            }
          }
          if (!placed)
            throw std::runtime_error("blocksworld bucket " + std::to_string(steps) +
                                     " unreachable within the resample budget");
        }
      }
      break;
    }
    case DomainId::game24: {
      for (int i = 0; i < spec.count; ++i) {
        bool placed = false;
        for (int attempt = 0; attempt < spec.resample_budget; ++attempt) {
          std::vector<Rational> numbers;
          for (int k = 0; k < 4; ++k)
            numbers.emplace_back(static_cast<std::int64_t>(rng() % 13 + 1));
          const bool solvable = g24_expression_solvable(numbers);
          if (!solvable && !spec.include_unsolvable) continue;
          PlanningTask task;
          task.domain = domain;
          task.initial_state = encode_state(g24_make_state(numbers));
          task.goal = Game24Goal{};
          task.instance_id = "g24-" + std::to_string(i);
          task.optimal_depth = solvable ? std::optional<int>(3) : std::nullopt;
          tasks.push_back(std::move(task));
          placed = true;
          break;
        }
        if (!placed)
          throw std::runtime_error("no solvable game24 quadruple found within the resample budget");
      }
      break;
    }
  }
  return tasks;
}

CompiledHeuristic resolve_heuristic(const HeuristicSpec& spec, DomainId domain,
                                    const dsl::EvalLimits& limits) {
  const std::string& s = spec.spec;
  if (s == "zero") {
    CompileResult r = parse_program("0", domain, limits, "Constant zero (uninformed search).");
    return *r.heuristic;
  }
  if (s.rfind("builtin:", 0) == 0) return compile(builtin(s.substr(8)), limits);
  if (s.rfind("source:", 0) == 0) {
    CompileResult r = parse_program(s.substr(7), domain, limits);
    if (!r.ok()) throw std::invalid_argument("heuristic source: " + r.error->describe());
    return *r.heuristic;
  }
  if (s.rfind("file:", 0) == 0) {
    const std::string path = s.substr(5);
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open heuristic file '" + path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    CompileResult r = parse_program(buffer.str(), domain, limits);
    if (!r.ok())
      throw std::invalid_argument("heuristic file '" + path + "': " + r.error->describe());
    return *r.heuristic;
  }
  // Bare builtin names are accepted for convenience.
  if (is_builtin_name(s)) return compile(builtin(s), limits);
  throw std::invalid_argument("unrecognized heuristic spec '" + s + "'");
}

BenchReport run_bench(const RunConfig& cfg, const std::vector<PlanningTask>& tasks) {
  if (tasks.empty()) throw std::invalid_argument("empty dataset");
  const CompiledHeuristic heuristic = resolve_heuristic(cfg.heuristic, cfg.domain);
  const WorldModel truth = ground_truth_model(cfg.domain, cfg.move_set);
  const WorldModel model = cfg.mode == WorldModel::Mode::ground_truth
                               ? truth
                               : gw::model_backed_world(
                                     std::shared_ptr<gw::CompletionClient>(
                                         gw::make_client_from_env(gw::endpoint_from_env())),
                                     cfg.domain, true, cfg.move_set);

  BenchReport report;
  report.outcomes.resize(tasks.size());
  const auto start = std::chrono::steady_clock::now();

  parallel_for(cfg.jobs, static_cast<int>(tasks.size()), [&](int i) {
    const PlanningTask& task = tasks[static_cast<size_t>(i)];
    SearchConfig search_cfg =
        cfg.search_overrides ? cfg.search : default_config(cfg.domain, task.optimal_depth);
    search_cfg.algorithm = cfg.search.algorithm;
    const SearchResult result = run_search(task, model, heuristic, search_cfg);

    InstanceOutcome& outcome = report.outcomes[static_cast<size_t>(i)];
    outcome.instance_id = task.instance_id;
    outcome.optimal_depth = task.optimal_depth;
    outcome.stats = result.stats;
    // Accuracy always scores against ground truth, whatever produced the
    // trace.
    if (result.status == SearchStatus::solved && !result.plans.empty()) {
      const ValidationReport vr = validate_plan(task, result.plans.front(), truth);
      outcome.solved = true;
      outcome.validated = vr.valid;
      outcome.plan_length = result.plans.front().length();
    }
  });

  Metrics& m = report.metrics;
  m.instances = static_cast<int>(tasks.size());
  std::map<int, int> bucket_solved;
  long solved = 0;
  double expansion_sum = 0.0;
  double length_sum = 0.0;
  for (const InstanceOutcome& o : report.outcomes) {
    const bool ok = o.solved && o.validated;
    solved += ok ? 1 : 0;
    expansion_sum += static_cast<double>(o.stats.expansions);
    m.fault_total += o.stats.heuristic_faults;
    const int bucket = o.optimal_depth.value_or(-1);
    ++m.bucket_sizes[bucket];
    if (ok) {
      ++bucket_solved[bucket];
      length_sum += o.plan_length;
    }
  }
  m.accuracy = static_cast<double>(solved) / static_cast<double>(m.instances);
  m.mean_expansions = expansion_sum / static_cast<double>(m.instances);
  m.mean_plan_length = solved > 0 ? length_sum / static_cast<double>(solved) : 0.0;
  for (const auto& [bucket, size] : m.bucket_sizes)
    m.per_bucket[bucket] = static_cast<double>(bucket_solved[bucket]) / size;
  m.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return report;
}

BenchReport run_bench(const RunConfig& cfg) {
  return run_bench(cfg, load_dataset(cfg.domain, cfg.dataset_path));
}

std::string report_markdown(const std::vector<Metrics>& rows) {
  std::vector<int> buckets;
  for (const Metrics& m : rows)
    for (const auto& [bucket, acc] : m.per_bucket)
      if (bucket >= 0 && std::find(buckets.begin(), buckets.end(), bucket) == buckets.end())
        buckets.push_back(bucket);
  std::sort(buckets.begin(), buckets.end());

  std::ostringstream out;
  out << "| run |";
  for (int b : buckets) out << " step " << b << " |";
  out << " all | mean expansions | mean plan length | faults |\n";
  out << "|---|";
  for (size_t i = 0; i < buckets.size(); ++i) out << "---|";
  out << "---|---|---|---|\n";
  out.setf(std::ios::fixed);
  out.precision(3);
  for (const Metrics& m : rows) {
    out << "| " << m.label << " |";
    for (int b : buckets) {
      auto it = m.per_bucket.find(b);
      if (it == m.per_bucket.end())
        out << " - |";
      else
        out << " " << it->second << " |";
    }
    out << " " << m.accuracy << " | " << m.mean_expansions << " | " << m.mean_plan_length
        << " | " << m.fault_total << " |\n";
  }
  return out.str();
}

std::string report_csv(const std::vector<Metrics>& rows) {
  std::ostringstream out;
  out << "label,instances,accuracy,mean_expansions,mean_plan_length,fault_total,wall_time_ms,"
         "buckets\n";
  for (const Metrics& m : rows) {
    out << m.label << "," << m.instances << "," << format_double(m.accuracy) << ","
        << format_double(m.mean_expansions) << "," << format_double(m.mean_plan_length) << ","
        << m.fault_total << "," << format_double(m.wall_time_ms) << ",";
    bool first = true;
    for (const auto& [bucket, acc] : m.per_bucket) {
      if (!first) out << ";";
      out << bucket << ":" << format_double(acc) << ":" << m.bucket_sizes.at(bucket);
      first = false;
    }
    out << "\n";
  }
  return out.str();
}

std::vector<Metrics> parse_report_csv(const std::string& csv) {
  std::vector<Metrics> rows;
  std::istringstream in(csv);
  std::string line;
  std::getline(in, line);  // header
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::string col;
    std::istringstream ls(line);
    while (std::getline(ls, col, ',')) cols.push_back(col);
    if (cols.size() < 7) throw std::invalid_argument("malformed metrics csv row: " + line);
    Metrics m;
    m.label = cols[0];
    m.instances = std::stoi(cols[1]);
    m.accuracy = parse_double(cols[2]);
    m.mean_expansions = parse_double(cols[3]);
    m.mean_plan_length = parse_double(cols[4]);
    m.fault_total = std::stol(cols[5]);
    m.wall_time_ms = parse_double(cols[6]);
    if (cols.size() > 7 && !cols[7].empty()) {
      std::istringstream bs(cols[7]);
      std::string entry;
      while (std::getline(bs, entry, ';')) {
        const size_t c1 = entry.find(':');
        const size_t c2 = entry.find(':', c1 + 1);
        const int bucket = std::stoi(entry.substr(0, c1));
        m.per_bucket[bucket] = parse_double(entry.substr(c1 + 1, c2 - c1 - 1));
        m.bucket_sizes[bucket] = std::stoi(entry.substr(c2 + 1));
      }
    }
    rows.push_back(std::move(m));
  }
  return rows;
}

}  // namespace autohd
