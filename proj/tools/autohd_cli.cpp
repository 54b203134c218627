// Command-line entry point: propose/evolve heuristics, solve instances, run
// benchmarks, generate datasets, run the brute-force oracle, inspect
// artifacts.
//
// Exit codes: 0 success, 1 task unsolved, 2 configuration error, 3 external
// service failure.

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "autohd/bench.hpp"
#include "autohd/domains.hpp"
#include "autohd/evolution.hpp"
#include "autohd/gateway.hpp"
#include "autohd/search.hpp"

using namespace autohd;
using nlohmann::json;

namespace {

constexpr int kExitSolved = 0;
constexpr int kExitUnsolved = 1;
constexpr int kExitConfig = 2;
constexpr int kExitService = 3;

json load_config_file(const std::string& path) {
  if (path.empty()) return json::object();
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file '" + path + "'");
  json config;
  in >> config;
  return config;
}

// Flags given explicitly win over config-file values.
template <typename T>
void merge_config(const CLI::App* cmd, const json& config, const std::string& key, T* out) {
  if (!config.contains(key)) return;
  const CLI::Option* opt = cmd->get_option_no_throw("--" + key);
  if (opt && opt->count() > 0) return;
  *out = config.at(key).get<T>();
}

void echo_config(const std::string& subcommand, const json& effective) {
  std::cout << "# " << subcommand << " config: " << effective.dump() << "\n";
}

PlanningTask load_single_task(DomainId domain, const std::string& dataset,
                              const std::string& instance, int index) {
  if (!instance.empty()) {
    std::ifstream in(instance);
    if (!in) throw std::runtime_error("cannot open instance file '" + instance + "'");
    std::string line;
    while (std::getline(in, line))
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        return task_from_record(domain, line);
    throw std::runtime_error("instance file '" + instance + "' holds no record");
  }
  if (dataset.empty())
    throw std::runtime_error("either --dataset or --instance is required");
  const auto tasks = load_dataset(domain, dataset);
  if (index < 0 || index >= static_cast<int>(tasks.size()))
    throw std::runtime_error("--index " + std::to_string(index) + " out of range (dataset has " +
                             std::to_string(tasks.size()) + " instances)");
  return tasks[static_cast<size_t>(index)];
}

std::map<int, int> parse_buckets(const std::string& text) {
  std::map<int, int> buckets;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const size_t colon = item.find(':');
    if (colon == std::string::npos)
      throw std::runtime_error("bucket spec entries look like depth:count, got '" + item + "'");
    buckets[std::stoi(item.substr(0, colon))] = std::stoi(item.substr(colon + 1));
  }
  if (buckets.empty()) throw std::runtime_error("empty bucket spec");
  return buckets;
}

void print_plan(const PlanTrace& plan) {
  if (plan.steps.empty()) {
    std::cout << "  (empty plan: initial state satisfies the goal)\n";
    return;
  }
  int step = 1;
  for (const auto& [action, state] : plan.steps)
    std::cout << "  " << step++ << ". " << action_text(action) << "\n";
}

void print_stats(const SearchStats& stats) {
  std::cout << "stats: expansions=" << stats.expansions << " generations=" << stats.generations
            << " duplicate_hits=" << stats.duplicate_hits
            << " heuristic_faults=" << stats.heuristic_faults << " wall_time_ms="
            << stats.wall_time_ms << "\n";
}

struct CommonArgs {
  std::string config_path;
  std::string domain_str;
  std::uint64_t seed = 0;
};

DomainId domain_of(const CommonArgs& args) {
  if (args.domain_str.empty()) throw std::runtime_error("--domain is required");
  return domain_from_name(args.domain_str);
}

int cmd_evolve(const CLI::App* cmd, CommonArgs& common, std::string& validation_path,
               int& b, int& generations, std::string& generator, std::string& out_path,
               std::string& best_out, std::string& algorithm) {
  const json config = load_config_file(common.config_path);
  merge_config(cmd, config, "domain", &common.domain_str);
  merge_config(cmd, config, "validation", &validation_path);
  merge_config(cmd, config, "b", &b);
  merge_config(cmd, config, "generations", &generations);
  merge_config(cmd, config, "generator", &generator);
  merge_config(cmd, config, "out", &out_path);
  merge_config(cmd, config, "seed", &common.seed);
  merge_config(cmd, config, "algorithm", &algorithm);

  const DomainId domain = domain_of(common);
  if (validation_path.empty()) throw std::runtime_error("--validation is required");

  echo_config("evolve", json{{"domain", common.domain_str},
                             {"validation", validation_path},
                             {"b", b},
                             {"generations", generations},
                             {"generator", generator},
                             {"out", out_path},
                             {"seed", common.seed},
                             {"algorithm", algorithm}});

  const auto validation = load_dataset(domain, validation_path);

  EvolutionConfig cfg;
  cfg.b = b;
  cfg.generations = generations;
  cfg.seed = common.seed;
  cfg.search = default_config(domain);
  cfg.search.algorithm = algorithm_from_name(algorithm);

  std::unique_ptr<GeneratorPort> port;
  if (generator == "stub") {
    port = make_stub_generator(domain, common.seed);
  } else if (generator == "llm") {
    auto client = std::shared_ptr<gw::CompletionClient>(
        gw::make_client_from_env(gw::endpoint_from_env()));
    port = gw::make_llm_generator(client, domain);
  } else {
    throw std::runtime_error("--generator must be 'stub' or 'llm'");
  }

  const Archive archive = evolve(*port, domain, validation, cfg);

  for (const GenerationRecord& rec : archive.generations)
    std::cout << "generation " << rec.index << ": best validation accuracy "
              << rec.best.validation_accuracy << " (" << rec.best.program.id << ")\n";
  std::cout << "global best: accuracy " << archive.global_best.validation_accuracy << " ("
            << archive.global_best.program.id << ")\n";

  {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot write archive '" + out_path + "'");
    out << archive_to_json(archive) << "\n";
  }
  const std::string best_path = best_out.empty() ? out_path + ".best.dsl" : best_out;
  {
    std::ofstream out(best_path);
    const HeuristicProgram& best = archive.global_best.program;
    out << (best.kind == HeuristicKind::builtin ? builtin_dsl_source(best.source)
                                                : best.source)
        << "\n";
  }
  std::cout << "archive written to " << out_path << ", best heuristic to " << best_path << "\n";
  return kExitSolved;
}

int cmd_solve(const CLI::App* cmd, CommonArgs& common, std::string& dataset,
              std::string& instance, int& index, std::string& heuristic,
              std::string& algorithm, int& num_solutions, int& budget, int& depth_cap,
              std::string& trace_path, std::string& world_model, std::string& move_set_str) {
  const json config = load_config_file(common.config_path);
  merge_config(cmd, config, "domain", &common.domain_str);
  merge_config(cmd, config, "dataset", &dataset);
  merge_config(cmd, config, "heuristic", &heuristic);
  merge_config(cmd, config, "algorithm", &algorithm);
  merge_config(cmd, config, "budget", &budget);
  merge_config(cmd, config, "num-solutions", &num_solutions);

  const DomainId domain = domain_of(common);
  const PlanningTask task = load_single_task(domain, dataset, instance, index);
  const CubeMoveSet move_set = move_set_from_name(move_set_str);

  echo_config("solve", json{{"domain", common.domain_str},
                            {"instance", task.instance_id},
                            {"heuristic", heuristic},
                            {"algorithm", algorithm},
                            {"num-solutions", num_solutions},
                            {"world-model", world_model}});

  SearchConfig cfg = default_config(domain, task.optimal_depth);
  cfg.algorithm = algorithm_from_name(algorithm);
  cfg.num_solutions = num_solutions;
  if (budget >= 0) cfg.expansion_budget = budget;
  if (depth_cap > 0) cfg.depth_cap = depth_cap;

  WorldModel model;
  if (world_model == "ground_truth") {
    model = ground_truth_model(domain, move_set);
  } else if (world_model == "model_backed") {
    auto client = std::shared_ptr<gw::CompletionClient>(
        gw::make_client_from_env(gw::endpoint_from_env()));
    model = gw::model_backed_world(client, domain, true, move_set);
  } else {
    throw std::runtime_error("--world-model must be 'ground_truth' or 'model_backed'");
  }

  const CompiledHeuristic h = resolve_heuristic({heuristic}, domain);

  std::ofstream trace_file;
  ExpansionSink sink;
  if (!trace_path.empty()) {
    trace_file.open(trace_path);
    if (!trace_file) throw std::runtime_error("cannot write trace '" + trace_path + "'");
    sink = [&trace_file](const ExpansionRecord& rec) {
      trace_file << json{{"iteration", rec.iteration}, {"state_key", rec.state_key},
                         {"g", rec.g},           {"h", rec.h},
                         {"f", rec.f},           {"action_in", rec.action_in}}
                        .dump()
                 << "\n";
    };
  }

  const SearchResult result = run_search(task, model, h, cfg, sink);
  std::cout << "status: " << status_name(result.status) << "\n";

  const WorldModel truth = ground_truth_model(domain, move_set);
  int valid_plans = 0;
  for (size_t i = 0; i < result.plans.size(); ++i) {
    const ValidationReport report = validate_plan(task, result.plans[i], truth);
    std::cout << "plan " << i + 1 << " (" << result.plans[i].length() << " steps, "
              << (report.valid ? "valid" : "INVALID: " + report.reason) << "):\n";
    print_plan(result.plans[i]);
    if (report.valid) ++valid_plans;
  }
  print_stats(result.stats);
  return valid_plans > 0 ? kExitSolved : kExitUnsolved;
}

int cmd_bench(const CLI::App* cmd, CommonArgs& common, std::string& dataset,
              std::string& heuristic, std::string& algorithm, int& budget, int& jobs,
              std::string& out_prefix, std::string& move_set_str, std::string& label,
              std::string& world_model) {
  const json config = load_config_file(common.config_path);
  merge_config(cmd, config, "domain", &common.domain_str);
  merge_config(cmd, config, "dataset", &dataset);
  merge_config(cmd, config, "heuristic", &heuristic);
  merge_config(cmd, config, "algorithm", &algorithm);
  merge_config(cmd, config, "jobs", &jobs);
  merge_config(cmd, config, "world-model", &world_model);

  const DomainId domain = domain_of(common);
  if (dataset.empty()) throw std::runtime_error("--dataset is required");
  if (world_model != "ground_truth" && world_model != "model_backed")
    throw std::runtime_error("--world-model must be 'ground_truth' or 'model_backed'");

  echo_config("bench", json{{"domain", common.domain_str},
                            {"dataset", dataset},
                            {"heuristic", heuristic},
                            {"algorithm", algorithm},
                            {"jobs", jobs},
                            {"world-model", world_model}});

  const auto tasks = load_dataset(domain, dataset);

  std::vector<Algorithm> algorithms;
  if (algorithm == "both")
    algorithms = {Algorithm::greedy_bfs, Algorithm::astar};
  else
    algorithms = {algorithm_from_name(algorithm)};

  std::vector<Metrics> rows;
  for (Algorithm alg : algorithms) {
    RunConfig cfg;
    cfg.domain = domain;
    cfg.heuristic.spec = heuristic;
    cfg.mode = world_model == "model_backed" ? WorldModel::Mode::model_backed
                                             : WorldModel::Mode::ground_truth;
    cfg.search.algorithm = alg;
    if (budget >= 0) {
      cfg.search = default_config(domain);
      cfg.search.algorithm = alg;
      cfg.search.expansion_budget = budget;
      cfg.search_overrides = true;
    }
    cfg.move_set = move_set_from_name(move_set_str);
    cfg.jobs = jobs;
    BenchReport report = run_bench(cfg, tasks);
    report.metrics.label =
        (label.empty() ? std::string("") : label + "/") + algorithm_name(alg);
    rows.push_back(report.metrics);
  }

  const std::string markdown = report_markdown(rows);
  const std::string csv = report_csv(rows);
  if (out_prefix.empty()) {
    std::cout << markdown << "\n" << csv;
  } else {
    std::ofstream(out_prefix + ".md") << markdown;
    std::ofstream(out_prefix + ".csv") << csv;
    std::cout << markdown;
    std::cout << "reports written to " << out_prefix << ".md and " << out_prefix << ".csv\n";
  }
  return kExitSolved;
}

int cmd_oracle(CommonArgs& common, std::string& dataset, std::string& instance, int& index,
               int& cap, std::string& move_set_str) {
  const DomainId domain = domain_of(common);
  const PlanningTask task = load_single_task(domain, dataset, instance, index);
  const int effective_cap = cap > 0 ? cap : domain_depth_cap(domain);

  echo_config("oracle", json{{"domain", common.domain_str},
                             {"instance", task.instance_id},
                             {"cap", effective_cap}});

  const OracleResult result = oracle_solve(task, effective_cap, move_set_from_name(move_set_str));
  if (!result.optimal_depth) {
    std::cout << "unsolvable within depth " << effective_cap << "\n";
    return kExitUnsolved;
  }
  std::cout << "optimal depth: " << *result.optimal_depth << "\n";
  print_plan(result.plan);
  return kExitSolved;
}

int cmd_gen_dataset(const CLI::App* cmd, CommonArgs& common, std::string& out_path,
                    std::string& buckets, int& count, int& blocks, bool include_unsolvable,
                    std::string& move_set_str) {
  const json config = load_config_file(common.config_path);
  merge_config(cmd, config, "domain", &common.domain_str);
  merge_config(cmd, config, "out", &out_path);
  merge_config(cmd, config, "seed", &common.seed);

  const DomainId domain = domain_of(common);
  if (out_path.empty()) throw std::runtime_error("--out is required");

  DatasetSpec spec;
  spec.count = count;
  spec.blocks = blocks;
  spec.include_unsolvable = include_unsolvable;
  spec.move_set = move_set_from_name(move_set_str);
  if (!buckets.empty()) spec.bucket_counts = parse_buckets(buckets);
  if (domain != DomainId::game24 && spec.bucket_counts.empty())
    throw std::runtime_error("--buckets is required for this domain (e.g. 1:20,2:20)");
  if (domain == DomainId::game24 && spec.count <= 0)
    throw std::runtime_error("--count is required for game24");

  echo_config("gen-dataset", json{{"domain", common.domain_str},
                                  {"out", out_path},
                                  {"seed", common.seed},
                                  {"buckets", buckets},
                                  {"count", count}});

  const auto tasks = gen_dataset(domain, spec, common.seed);
  save_dataset(tasks, out_path, spec.move_set);
  std::cout << "wrote " << tasks.size() << " instances to " << out_path << "\n";
  return kExitSolved;
}

int cmd_inspect(CommonArgs& common, std::string& archive_path, std::string& heuristic_path,
                std::string& dataset_path) {
  if (!archive_path.empty()) {
    std::ifstream in(archive_path);
    if (!in) throw std::runtime_error("cannot open archive '" + archive_path + "'");
    std::stringstream buffer;
    buffer << in.rdbuf();
    const Archive archive = archive_from_json(buffer.str());
    std::cout << "archive: domain=" << domain_name(archive.domain) << " b=" << archive.b
              << " generations=" << archive.generations_run << " seed=" << archive.seed << "\n";
    for (const GenerationRecord& rec : archive.generations)
      std::cout << "  generation " << rec.index << ": best accuracy "
                << rec.best.validation_accuracy << "\n";
    std::cout << "global best (" << archive.global_best.program.id
              << "): accuracy=" << archive.global_best.validation_accuracy << "\n"
              << "description: " << archive.global_best.program.description << "\n"
              << archive.global_best.program.source << "\n";
    return kExitSolved;
  }
  if (!heuristic_path.empty()) {
    const DomainId domain = domain_of(common);
    const CompiledHeuristic h = resolve_heuristic({"file:" + heuristic_path}, domain);
    std::cout << "heuristic id: " << h.program.id << "\n"
              << "canonical form: " << dsl::pretty_print(h.ast) << "\n";
    return kExitSolved;
  }
  if (!dataset_path.empty()) {
    const DomainId domain = domain_of(common);
    const auto tasks = load_dataset(domain, dataset_path);
    std::map<int, int> buckets;
    for (const PlanningTask& task : tasks) ++buckets[task.optimal_depth.value_or(-1)];
    std::cout << "dataset: " << tasks.size() << " instances\n";
    for (const auto& [depth, n] : buckets) {
      if (depth < 0)
        std::cout << "  unknown optimal depth: " << n << "\n";
      else
        std::cout << "  optimal depth " << depth << ": " << n << "\n";
    }
    return kExitSolved;
  }
  throw std::runtime_error("inspect needs one of --archive, --heuristic or --dataset");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Heuristic-discovery planning engine: evolve machine-proposed heuristics and "
               "run heuristic-guided search over Blocksworld, Game of 24 and the 2x2 cube."};
  app.require_subcommand(1);

  CommonArgs common;

  // evolve
  auto* evolve_cmd = app.add_subcommand("evolve", "Evolve a heuristic against a validation set");
  std::string validation_path, generator = "stub", evolve_out = "archive.json", best_out;
  std::string evolve_algorithm = "astar";
  int b = 4, generations = 5;
  evolve_cmd->add_option("--domain", common.domain_str, "Domain: blocksworld, game24, cube2x2");
  evolve_cmd->add_option("--config", common.config_path, "JSON config file (flags win)");
  evolve_cmd->add_option("--validation", validation_path, "Validation dataset (JSONL)");
  evolve_cmd->add_option("--b", b, "Population size")->capture_default_str();
  evolve_cmd->add_option("--generations", generations, "Evolution generations K")
      ->capture_default_str();
  evolve_cmd->add_option("--generator", generator, "Candidate generator: stub or llm")
      ->capture_default_str();
  evolve_cmd->add_option("--seed", common.seed, "Random seed")->capture_default_str();
  evolve_cmd->add_option("--out", evolve_out, "Archive output path")->capture_default_str();
  evolve_cmd->add_option("--best-out", best_out, "Standalone DSL file for the best heuristic");
  evolve_cmd->add_option("--algorithm", evolve_algorithm, "Search used for evaluation")
      ->capture_default_str();

  // solve
  auto* solve_cmd = app.add_subcommand("solve", "Solve one instance with heuristic-guided search");
  std::string solve_dataset, solve_instance, solve_heuristic = "zero";
  std::string solve_algorithm = "astar", trace_path, world_model = "ground_truth";
  std::string solve_move_set = "full18";
  int solve_index = 0, num_solutions = 1, solve_budget = -1, solve_depth_cap = 0;
  solve_cmd->add_option("--domain", common.domain_str, "Domain: blocksworld, game24, cube2x2");
  solve_cmd->add_option("--config", common.config_path, "JSON config file (flags win)");
  solve_cmd->add_option("--dataset", solve_dataset, "Dataset (JSONL) to pick an instance from");
  solve_cmd->add_option("--index", solve_index, "Instance index within --dataset")
      ->capture_default_str();
  solve_cmd->add_option("--instance", solve_instance, "File holding a single instance record");
  solve_cmd->add_option("--heuristic", solve_heuristic,
                        "builtin:<name>, file:<path>, source:<expr> or zero")
      ->capture_default_str();
  solve_cmd->add_option("--algorithm", solve_algorithm, "astar or greedy")
      ->capture_default_str();
  solve_cmd->add_option("--num-solutions", num_solutions, "Stop after this many goal traces")
      ->capture_default_str();
  solve_cmd->add_option("--budget", solve_budget, "Expansion budget (-1: domain default)")
      ->capture_default_str();
  solve_cmd->add_option("--depth-cap", solve_depth_cap, "Depth cap (0: domain default)")
      ->capture_default_str();
  solve_cmd->add_option("--trace", trace_path, "Write a JSONL expansion trace here");
  solve_cmd->add_option("--world-model", world_model, "ground_truth or model_backed")
      ->capture_default_str();
  solve_cmd->add_option("--move-set", solve_move_set, "Cube move set: full18 or urf9")
      ->capture_default_str();

  // bench
  auto* bench_cmd = app.add_subcommand("bench", "Run a dataset and report accuracy metrics");
  std::string bench_dataset, bench_heuristic = "zero", bench_algorithm = "astar";
  std::string bench_out, bench_move_set = "full18", bench_label;
  std::string bench_world_model = "ground_truth";
  int bench_budget = -1, jobs = 1;
  bench_cmd->add_option("--domain", common.domain_str, "Domain: blocksworld, game24, cube2x2");
  bench_cmd->add_option("--config", common.config_path, "JSON config file (flags win)");
  bench_cmd->add_option("--dataset", bench_dataset, "Dataset (JSONL)");
  bench_cmd->add_option("--heuristic", bench_heuristic,
                        "builtin:<name>, file:<path>, source:<expr> or zero")
      ->capture_default_str();
  bench_cmd->add_option("--algorithm", bench_algorithm, "astar, greedy or both")
      ->capture_default_str();
  bench_cmd->add_option("--budget", bench_budget, "Expansion budget (-1: domain default)")
      ->capture_default_str();
  bench_cmd->add_option("--jobs", jobs, "Instance-level parallelism")->capture_default_str();
  bench_cmd->add_option("--out", bench_out, "Report path prefix (writes .md and .csv)");
  bench_cmd->add_option("--move-set", bench_move_set, "Cube move set: full18 or urf9")
      ->capture_default_str();
  bench_cmd->add_option("--label", bench_label, "Row label prefix in reports");
  bench_cmd->add_option("--world-model", bench_world_model, "ground_truth or model_backed")
      ->capture_default_str();

  // oracle
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact brute-force solve of one instance");
  std::string oracle_dataset, oracle_instance, oracle_move_set = "full18";
  int oracle_index = 0, oracle_cap = 0;
  oracle_cmd->add_option("--domain", common.domain_str, "Domain: blocksworld, game24, cube2x2");
  oracle_cmd->add_option("--dataset", oracle_dataset, "Dataset (JSONL) to pick an instance from");
  oracle_cmd->add_option("--index", oracle_index, "Instance index within --dataset")
      ->capture_default_str();
  oracle_cmd->add_option("--instance", oracle_instance, "File holding a single instance record");
  oracle_cmd->add_option("--cap", oracle_cap, "Depth cap (0: domain default)")
      ->capture_default_str();
  oracle_cmd->add_option("--move-set", oracle_move_set, "Cube move set: full18 or urf9")
      ->capture_default_str();

  // gen-dataset
  auto* gen_cmd = app.add_subcommand("gen-dataset", "Generate an oracle-verified dataset");
  std::string gen_out, gen_buckets;
  int gen_count = 0, gen_blocks = 4;
  bool include_unsolvable = false;
  std::string gen_move_set = "full18";
  gen_cmd->add_option("--domain", common.domain_str, "Domain: blocksworld, game24, cube2x2");
  gen_cmd->add_option("--config", common.config_path, "JSON config file (flags win)");
  gen_cmd->add_option("--out", gen_out, "Output dataset path (JSONL)");
  gen_cmd->add_option("--seed", common.seed, "Random seed")->capture_default_str();
  gen_cmd->add_option("--buckets", gen_buckets,
                      "Per-depth counts, e.g. 1:20,2:20 (cube, blocksworld)");
  gen_cmd->add_option("--count", gen_count, "Instance count (game24)")->capture_default_str();
  gen_cmd->add_option("--blocks", gen_blocks, "Blocksworld block count")->capture_default_str();
  gen_cmd->add_flag("--include-unsolvable", include_unsolvable,
                    "game24: keep unsolvable quadruples too");
  gen_cmd->add_option("--move-set", gen_move_set, "Cube move set: full18 or urf9")
      ->capture_default_str();

  // inspect
  auto* inspect_cmd = app.add_subcommand("inspect", "Summarize archives, heuristics, datasets");
  std::string inspect_archive, inspect_heuristic, inspect_dataset;
  inspect_cmd->add_option("--domain", common.domain_str,
                          "Domain (for --heuristic and --dataset)");
  inspect_cmd->add_option("--archive", inspect_archive, "Archive JSON to summarize");
  inspect_cmd->add_option("--heuristic", inspect_heuristic, "DSL file to parse and normalize");
  inspect_cmd->add_option("--dataset", inspect_dataset, "Dataset (JSONL) to summarize");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitConfig;
  }

  try {
    if (*evolve_cmd)
      return cmd_evolve(evolve_cmd, common, validation_path, b, generations, generator,
                        evolve_out, best_out, evolve_algorithm);
    if (*solve_cmd)
      return cmd_solve(solve_cmd, common, solve_dataset, solve_instance, solve_index,
                       solve_heuristic, solve_algorithm, num_solutions, solve_budget,
                       solve_depth_cap, trace_path, world_model, solve_move_set);
    if (*bench_cmd)
      return cmd_bench(bench_cmd, common, bench_dataset, bench_heuristic, bench_algorithm,
                       bench_budget, jobs, bench_out, bench_move_set, bench_label,
                       bench_world_model);
    if (*oracle_cmd)
      return cmd_oracle(common, oracle_dataset, oracle_instance, oracle_index, oracle_cap,
                        oracle_move_set);
    if (*gen_cmd)
      return cmd_gen_dataset(gen_cmd, common, gen_out, gen_buckets, gen_count, gen_blocks,
                             include_unsolvable, gen_move_set);
    if (*inspect_cmd)
      return cmd_inspect(common, inspect_archive, inspect_heuristic, inspect_dataset);
  } catch (const gw::GatewayError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitService;
  } catch (const std::exception& e) {
    const std::string what = e.what();
    std::cerr << "error: " << what << "\n";
    return what.find("generator failed") != std::string::npos ? kExitService : kExitConfig;
  }
  return kExitConfig;
}
