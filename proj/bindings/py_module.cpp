// Python bindings for the main engine operations. Records, specs and results
// cross the boundary as JSON strings; the autohd package wraps them with
// dict-based helpers.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <json.hpp>

#include "autohd/bench.hpp"
#include "autohd/domains.hpp"
#include "autohd/evolution.hpp"
#include "autohd/gateway.hpp"
#include "autohd/search.hpp"

namespace py = pybind11;
using namespace autohd;
using nlohmann::json;

namespace {

json plan_to_json(const PlanningTask& task, const PlanTrace& plan, const WorldModel& truth) {
  json actions = json::array();
  for (const auto& [action, state] : plan.steps) actions.push_back(action_text(action));
  const ValidationReport report = validate_plan(task, plan, truth);
  return json{{"actions", actions},
              {"length", plan.length()},
              {"final_state", state_text(plan.final_state())},
              {"valid", report.valid}};
}

json stats_to_json(const SearchStats& stats) {
  return json{{"expansions", stats.expansions},
              {"generations", stats.generations},
              {"duplicate_hits", stats.duplicate_hits},
              {"heuristic_faults", stats.heuristic_faults},
              {"wall_time_ms", stats.wall_time_ms}};
}

std::string solve_json(const std::string& domain_str, const std::string& record,
                       const std::string& heuristic, const std::string& algorithm,
                       int num_solutions, int budget, int depth_cap,
                       const std::string& move_set_str) {
  const DomainId domain = domain_from_name(domain_str);
  const PlanningTask task = task_from_record(domain, record);
  const CubeMoveSet move_set = move_set_from_name(move_set_str);
  SearchConfig cfg = default_config(domain, task.optimal_depth);
  cfg.algorithm = algorithm_from_name(algorithm);
  cfg.num_solutions = num_solutions;
  if (budget >= 0) cfg.expansion_budget = budget;
  if (depth_cap > 0) cfg.depth_cap = depth_cap;

  const WorldModel model = ground_truth_model(domain, move_set);
  const CompiledHeuristic h = resolve_heuristic({heuristic}, domain);
  const SearchResult result = run_search(task, model, h, cfg);

  json plans = json::array();
  for (const PlanTrace& plan : result.plans) plans.push_back(plan_to_json(task, plan, model));
  return json{{"status", status_name(result.status)},
              {"plans", plans},
              {"stats", stats_to_json(result.stats)}}
      .dump();
}

std::string oracle_json(const std::string& domain_str, const std::string& record, int cap,
                        const std::string& move_set_str) {
  const DomainId domain = domain_from_name(domain_str);
  const PlanningTask task = task_from_record(domain, record);
  const int effective_cap = cap > 0 ? cap : domain_depth_cap(domain);
  const OracleResult result =
      oracle_solve(task, effective_cap, move_set_from_name(move_set_str));
  json out;
  if (result.optimal_depth) {
    out["optimal_depth"] = *result.optimal_depth;
    json actions = json::array();
    for (const auto& [action, state] : result.plan.steps)
      actions.push_back(action_text(action));
    out["plan"] = actions;
  } else {
    out["optimal_depth"] = nullptr;
  }
  return out.dump();
}

std::vector<std::string> gen_dataset_json(const std::string& domain_str,
                                          const std::string& spec_json, std::uint64_t seed) {
  const DomainId domain = domain_from_name(domain_str);
  const json spec_in = json::parse(spec_json);
  DatasetSpec spec;
  if (spec_in.contains("buckets"))
    for (const auto& [key, value] : spec_in["buckets"].items())
      spec.bucket_counts[std::stoi(key)] = value.get<int>();
  spec.count = spec_in.value("count", 0);
  spec.blocks = spec_in.value("blocks", 4);
  spec.include_unsolvable = spec_in.value("include_unsolvable", false);
  if (spec_in.contains("move_set"))
    spec.move_set = move_set_from_name(spec_in["move_set"].get<std::string>());
  std::vector<std::string> records;
  for (const PlanningTask& task : gen_dataset(domain, spec, seed))
    records.push_back(record_from_task(task, spec.move_set));
  return records;
}

std::string validate_json(const std::string& domain_str, const std::string& record,
                          const std::vector<std::string>& actions,
                          const std::string& move_set_str) {
  const DomainId domain = domain_from_name(domain_str);
  const PlanningTask task = task_from_record(domain, record);
  const WorldModel model = ground_truth_model(domain, move_set_from_name(move_set_str));

  PlanTrace trace;
  trace.origin = task.initial_state;
  EncodedState current = task.initial_state;
  for (const std::string& text : actions) {
    EncodedAction action;
    try {
      action = action_from_text(domain, text);
    } catch (const std::exception& e) {
      return json{{"valid", false}, {"reason", std::string("unparseable action: ") + text}}
          .dump();
    }
    std::optional<EncodedState> next;
    try {
      next = model.transition_fn(current, action);
    } catch (const std::exception& e) {
      return json{{"valid", false},
                  {"reason", "action '" + text + "' is illegal: " + e.what()}}
          .dump();
    }
    trace.steps.emplace_back(action, *next);
    current = *next;
  }
  const ValidationReport report = validate_plan(task, trace, model);
  return json{{"valid", report.valid}, {"reason", report.reason}}.dump();
}

std::string heuristic_value_json(const std::string& domain_str, const std::string& record,
                                 const std::string& heuristic) {
  const DomainId domain = domain_from_name(domain_str);
  const PlanningTask task = task_from_record(domain, record);
  const CompiledHeuristic h = resolve_heuristic({heuristic}, domain);
  const dsl::EvalOutcome outcome = heuristic_value(h, task.initial_state, task.goal);
  if (dsl::is_fault(outcome)) {
    const dsl::Fault& fault = std::get<dsl::Fault>(outcome);
    return json{{"fault", dsl::fault_kind_name(fault.kind)}, {"message", fault.message}}.dump();
  }
  return json{{"value", std::get<double>(outcome)}}.dump();
}

std::string parse_heuristic_json(const std::string& source, const std::string& domain_str) {
  const CompileResult r = parse_program(source, domain_from_name(domain_str));
  if (!r.ok())
    return json{{"ok", false},
                {"error", r.error->describe()},
                {"line", r.error->line},
                {"col", r.error->col}}
        .dump();
  return json{{"ok", true},
              {"id", r.heuristic->program.id},
              {"canonical", dsl::pretty_print(r.heuristic->ast)}}
      .dump();
}

std::string evolve_stub_json(const std::string& domain_str,
                             const std::vector<std::string>& validation_records, int b,
                             int generations, std::uint64_t seed) {
  const DomainId domain = domain_from_name(domain_str);
  std::vector<PlanningTask> validation;
  for (const std::string& record : validation_records)
    validation.push_back(task_from_record(domain, record));
  EvolutionConfig cfg;
  cfg.b = b;
  cfg.generations = generations;
  cfg.seed = seed;
  cfg.search = default_config(domain);
  cfg.search.algorithm = Algorithm::astar;
  auto gen = make_stub_generator(domain, seed);
  return archive_to_json(evolve(*gen, domain, validation, cfg));
}

std::string render_prompt_py(const std::string& name,
                             const std::map<std::string, std::string>& slots) {
  return gw::render_prompt(gw::prompt_template(name), slots);
}

}  // namespace

PYBIND11_MODULE(_autohd, m) {
  m.doc() = "Heuristic-discovery planning engine: evolved heuristics guiding greedy BFS and "
            "A* over Blocksworld, Game of 24 and the 2x2 pocket cube.";

  m.def("solve_json", &solve_json, py::arg("domain"), py::arg("record"),
        py::arg("heuristic") = "zero", py::arg("algorithm") = "astar",
        py::arg("num_solutions") = 1, py::arg("budget") = -1, py::arg("depth_cap") = 0,
        py::arg("move_set") = "full18",
        "Heuristic-guided search over one instance record; returns a JSON result.");
  m.def("oracle_json", &oracle_json, py::arg("domain"), py::arg("record"), py::arg("cap") = 0,
        py::arg("move_set") = "full18",
        "Exact brute-force solve; returns optimal depth and one optimal plan as JSON.");
  m.def("gen_dataset_json", &gen_dataset_json, py::arg("domain"), py::arg("spec"),
        py::arg("seed") = 0, "Generate oracle-verified instance records (JSON lines).");
  m.def("validate_json", &validate_json, py::arg("domain"), py::arg("record"),
        py::arg("actions"), py::arg("move_set") = "full18",
        "Replay an action list against ground truth and validate it.");
  m.def("heuristic_value_json", &heuristic_value_json, py::arg("domain"), py::arg("record"),
        py::arg("heuristic"), "Evaluate a heuristic on the instance's initial state.");
  m.def("parse_heuristic_json", &parse_heuristic_json, py::arg("source"), py::arg("domain"),
        "Parse heuristic source; returns the id and canonical form or a diagnostic.");
  m.def("evolve_stub_json", &evolve_stub_json, py::arg("domain"), py::arg("validation"),
        py::arg("b") = 4, py::arg("generations") = 5, py::arg("seed") = 0,
        "Run the offline stub evolution loop; returns the archive as JSON.");
  m.def("builtin_names", [] { return builtin_names(); },
        "Names of the reference heuristics.");
  m.def("builtin_source", &builtin_dsl_source, py::arg("name"),
        "Equivalent DSL source of a reference heuristic.");
  m.def("render_prompt", &render_prompt_py, py::arg("name"), py::arg("slots"),
        "Render a prompt template with the given slot values.");
  m.def("prompt_template_names", &gw::prompt_template_names);

  m.attr("__version__") = "0.1.0";
}
