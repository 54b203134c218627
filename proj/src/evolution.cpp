#include "autohd/evolution.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include <json.hpp>

#include "autohd/domains.hpp"

namespace autohd {

using nlohmann::json;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Candidate parse_generated(const GeneratedCandidate& gc, DomainId domain,
                          const dsl::EvalLimits& limits, int generation) {
  Candidate c;
  c.generation_born = generation;
  CompileResult r = parse_program(gc.source, domain, limits, gc.description);
  if (r.ok()) {
    c.program = r.heuristic->program;
  } else {
    c.disqualified = true;
    c.program.kind = HeuristicKind::dsl_source;
    c.program.domain = domain;
    c.program.source = gc.source;
    c.program.description = gc.description;
    c.program.id = stable_hash(domain_name(domain) + "\x1f" + "broken" + "\x1f" + gc.source);
  }
  return c;
}

// Requests one candidate, retrying transient generator failures and parse
// failures up to the cap; the last attempt is kept even when disqualified.
Candidate request_candidate(const std::function<GeneratedCandidate()>& call, DomainId domain,
                            const EvolutionConfig& cfg, int generation,
                            std::vector<LineageEntry>* lineage) {
  std::vector<std::string> attempts;
  Candidate last;
  bool have_any = false;
  for (int attempt = 0; attempt <= cfg.retry_cap; ++attempt) {
    GeneratedCandidate gc;
    try {
      gc = call();
    } catch (const std::exception& e) {
      attempts.push_back(e.what());
      continue;
    }
    last = parse_generated(gc, domain, cfg.limits, generation);
    have_any = true;
    if (lineage)
      lineage->push_back({last.program.id, gc.operator_name, gc.evolution_type, gc.parent_ids,
                          generation, last.disqualified});
    if (!last.disqualified) return last;
  }
  if (have_any) return last;  // disqualified placeholder keeps the run going
  std::ostringstream msg;
  msg << "generator failed after " << (cfg.retry_cap + 1) << " attempts:";
  for (const auto& a : attempts) msg << " [" << a << "]";
  throw std::runtime_error(msg.str());
}

// Descending accuracy; ties prefer fewer mean expansions, then smaller id.
bool candidate_before(const Candidate& a, const Candidate& b) {
  if (a.validation_accuracy != b.validation_accuracy)
    return a.validation_accuracy > b.validation_accuracy;
  const double ea = a.validation_accuracy > 0.0 ? a.mean_expansions : kInf;
  const double eb = b.validation_accuracy > 0.0 ? b.mean_expansions : kInf;
  if (ea != eb) return ea < eb;
  return a.program.id < b.program.id;
}

json candidate_to_json(const Candidate& c) {
  return json{{"id", c.program.id},
              {"description", c.program.description},
              {"kind", c.program.kind == HeuristicKind::builtin ? "builtin" : "dsl"},
              {"source", c.program.source},
              {"domain", domain_name(c.program.domain)},
              {"disqualified", c.disqualified},
              {"accuracy", c.validation_accuracy},
              {"mean_expansions", c.mean_expansions},
              {"fault_count", c.fault_count},
              {"generation_born", c.generation_born}};
}

Candidate candidate_from_json(const json& j) {
  Candidate c;
  c.program.id = j.at("id").get<std::string>();
  c.program.description = j.at("description").get<std::string>();
  c.program.kind =
      j.at("kind").get<std::string>() == "builtin" ? HeuristicKind::builtin
                                                   : HeuristicKind::dsl_source;
  c.program.source = j.at("source").get<std::string>();
  c.program.domain = domain_from_name(j.at("domain").get<std::string>());
  c.disqualified = j.at("disqualified").get<bool>();
  c.validation_accuracy = j.at("accuracy").get<double>();
  c.mean_expansions = j.at("mean_expansions").get<double>();
  c.fault_count = j.at("fault_count").get<long>();
  c.generation_born = j.at("generation_born").get<int>();
  return c;
}

}  // namespace

Candidate evaluate_candidate(const HeuristicProgram& program,
                             const std::vector<PlanningTask>& validation,
                             const WorldModel& model, const SearchConfig& cfg,
                             const dsl::EvalLimits& limits, int generation_born) {
  if (validation.empty()) throw std::invalid_argument("validation set is empty");
  Candidate c;
  c.program = program;
  c.generation_born = generation_born;

  const CompiledHeuristic compiled = compile(program, limits);
  long solved = 0;
  double expansions_over_solved = 0.0;
  for (const PlanningTask& task : validation) {
    const SearchResult result = run_search(task, model, compiled, cfg);
    c.fault_count += result.stats.heuristic_faults;
    if (result.status == SearchStatus::solved) {
      ++solved;
      expansions_over_solved += static_cast<double>(result.stats.expansions);
    }
  }
  c.validation_accuracy = static_cast<double>(solved) / static_cast<double>(validation.size());
  c.mean_expansions = solved > 0 ? expansions_over_solved / static_cast<double>(solved) : 0.0;
  return c;
}

Population init_population(GeneratorPort& gen, int b, DomainId domain,
                           const EvolutionConfig& cfg, std::vector<LineageEntry>* lineage) {
  if (b < 2) throw std::invalid_argument("population size b must be >= 2");
  Population pop;
  pop.b = b;
  pop.generation_index = 0;
  for (int i = 0; i < b; ++i)
    pop.members.push_back(
        request_candidate([&] { return gen.propose(); }, domain, cfg, 0, lineage));
  return pop;
}

Population step_generation(const Population& pop, GeneratorPort& gen, DomainId domain,
                           const std::vector<PlanningTask>& validation, const WorldModel& model,
                           const EvolutionConfig& cfg, std::vector<LineageEntry>* lineage,
                           Candidate* pool_best) {
  if (pop.members.empty()) throw std::invalid_argument("population is empty");
  const int generation = pop.generation_index + 1;

  // b exploration candidates (types 1,2,...) then b modification (3,4,...).
  std::vector<Candidate> pool;
  for (int i = 0; i < pop.b; ++i) {
    const int type = 1 + i % 2;
    pool.push_back(request_candidate([&] { return gen.explore(pop.members, type); }, domain,
                                     cfg, generation, lineage));
  }
  for (int i = 0; i < pop.b; ++i) {
    const int type = 3 + i % 2;
    pool.push_back(request_candidate([&] { return gen.modify(pop.members, type); }, domain,
                                     cfg, generation, lineage));
  }

  // Deduplicate by program id before evaluation.
  std::vector<Candidate> unique_pool;
  std::set<std::string> seen;
  for (Candidate& c : pool)
    if (seen.insert(c.program.id).second) unique_pool.push_back(std::move(c));

  for (Candidate& c : unique_pool) {
    if (c.disqualified) continue;  // accuracy stays 0 by definition
    c = evaluate_candidate(c.program, validation, model, cfg.search, cfg.limits, generation);
  }

  std::stable_sort(unique_pool.begin(), unique_pool.end(), candidate_before);
  if (pool_best && !unique_pool.empty()) *pool_best = unique_pool.front();

  const size_t keep = unique_pool.size() / 2;
  unique_pool.resize(std::max<size_t>(keep, 1));

  // Uniform sample of b without replacement; identity when the pool is
  // already within bounds.
  Population next;
  next.b = pop.b;
  next.generation_index = generation;
  if (static_cast<int>(unique_pool.size()) <= pop.b) {
    next.members = std::move(unique_pool);
  } else {
    std::mt19937_64 rng(cfg.seed ^ (0x9e3779b97f4a7c15ull * static_cast<std::uint64_t>(generation)));
    for (int i = 0; i < pop.b; ++i) {
      const size_t j = i + rng() % (unique_pool.size() - static_cast<size_t>(i));
      std::swap(unique_pool[static_cast<size_t>(i)], unique_pool[j]);
      next.members.push_back(unique_pool[static_cast<size_t>(i)]);
    }
  }
  return next;
}

Archive evolve(GeneratorPort& gen, DomainId domain, const std::vector<PlanningTask>& validation,
               const EvolutionConfig& cfg) {
  if (cfg.generations < 1) throw std::invalid_argument("generations K must be >= 1");
  const WorldModel model = ground_truth_model(domain, cfg.move_set);

  Archive archive;
  archive.domain = domain;
  archive.seed = cfg.seed;
  archive.b = cfg.b;
  archive.generations_run = cfg.generations;

  Population pop = init_population(gen, cfg.b, domain, cfg, &archive.lineage);
  for (Candidate& c : pop.members) {
    if (c.disqualified) continue;
    c = evaluate_candidate(c.program, validation, model, cfg.search, cfg.limits, 0);
  }

  auto record_generation = [&](const Population& p, const Candidate& best) {
    GenerationRecord rec;
    rec.index = p.generation_index;
    rec.members = p.members;
    rec.best = best;
    archive.generations.push_back(std::move(rec));
    // Running max: the global best accuracy is nondecreasing by
    // construction.
    if (archive.generations.size() == 1 ||
        best.validation_accuracy > archive.global_best.validation_accuracy)
      archive.global_best = best;
  };

  {
    std::vector<Candidate> sorted = pop.members;
    std::stable_sort(sorted.begin(), sorted.end(), candidate_before);
    record_generation(pop, sorted.front());
  }

  for (int i = 1; i <= cfg.generations; ++i) {
    Candidate pool_best;
    pop = step_generation(pop, gen, domain, validation, model, cfg, &archive.lineage,
                          &pool_best);
    record_generation(pop, pool_best);
  }
  return archive;
}

std::string archive_to_json(const Archive& archive) {
  json j;
  j["domain"] = domain_name(archive.domain);
  j["seed"] = archive.seed;
  j["b"] = archive.b;
  j["generations_run"] = archive.generations_run;
  j["global_best"] = candidate_to_json(archive.global_best);
  json gens = json::array();
  for (const GenerationRecord& rec : archive.generations) {
    json members = json::array();
    for (const Candidate& c : rec.members) members.push_back(candidate_to_json(c));
    gens.push_back(json{{"index", rec.index},
                        {"best", candidate_to_json(rec.best)},
                        {"members", members}});
  }
  j["generations"] = gens;
  json lineage = json::array();
  for (const LineageEntry& e : archive.lineage)
    lineage.push_back(json{{"id", e.id},
                           {"operator", e.operator_name},
                           {"evolution_type", e.evolution_type},
                           {"parents", e.parent_ids},
                           {"generation", e.generation},
                           {"disqualified", e.disqualified}});
  j["lineage"] = lineage;
  return j.dump(2);
}

Archive archive_from_json(const std::string& text) {
  const json j = json::parse(text);
  Archive archive;
  archive.domain = domain_from_name(j.at("domain").get<std::string>());
  archive.seed = j.at("seed").get<std::uint64_t>();
  archive.b = j.at("b").get<int>();
  archive.generations_run = j.at("generations_run").get<int>();
  archive.global_best = candidate_from_json(j.at("global_best"));
  for (const json& g : j.at("generations")) {
    GenerationRecord rec;
    rec.index = g.at("index").get<int>();
    rec.best = candidate_from_json(g.at("best"));
    for (const json& m : g.at("members")) rec.members.push_back(candidate_from_json(m));
    archive.generations.push_back(std::move(rec));
  }
  for (const json& e : j.at("lineage")) {
    LineageEntry entry;
    entry.id = e.at("id").get<std::string>();
    entry.operator_name = e.at("operator").get<std::string>();
    entry.evolution_type = e.at("evolution_type").get<int>();
    entry.parent_ids = e.at("parents").get<std::vector<std::string>>();
    entry.generation = e.at("generation").get<int>();
    entry.disqualified = e.at("disqualified").get<bool>();
    archive.lineage.push_back(std::move(entry));
  }
  return archive;
}

namespace {

// Emits weighted variants of the reference heuristic family for the domain.
// Weights come from a seeded sequence, so runs are bit-identical; "modify"
// perturbs the weights, "explore" swaps between alternate forms.
class StubGenerator : public GeneratorPort {
 public:
  StubGenerator(DomainId domain, std::uint64_t seed) : domain_(domain), rng_(seed) {}

  GeneratedCandidate propose() override {
    GeneratedCandidate gc = next_candidate(0);
    gc.operator_name = "propose";
    return gc;
  }

  GeneratedCandidate explore(const std::vector<Candidate>& existing,
                             int evolution_type) override {
    GeneratedCandidate gc = next_candidate(evolution_type);
    gc.operator_name = "explore";
    gc.evolution_type = evolution_type;
    for (const Candidate& c : existing) gc.parent_ids.push_back(c.program.id);
    return gc;
  }

  GeneratedCandidate modify(const std::vector<Candidate>& existing,
                            int evolution_type) override {
    GeneratedCandidate gc = next_candidate(evolution_type);
    gc.operator_name = "modify";
    gc.evolution_type = evolution_type;
    for (const Candidate& c : existing) gc.parent_ids.push_back(c.program.id);
    return gc;
  }

 private:
  // Weight in {1..8} scaled by 0.5.
  std::string next_weight() {
    const int w = static_cast<int>(rng_() % 8) + 1;
    return w % 2 == 0 ? std::to_string(w / 2) : std::to_string(w) + " / 2";
  }

  GeneratedCandidate next_candidate(int evolution_type) {
    GeneratedCandidate gc;
    const int variant = evolution_type == 0 || evolution_type <= 2
                            ? static_cast<int>(rng_() % 3)
                            : 0;  // modification stays within the base form
    const std::string w1 = next_weight();
    const std::string w2 = next_weight();
    switch (domain_) {
      case DomainId::cube2x2:
        if (variant == 1) {
          gc.description = "Counts facelets that differ from their face's first sticker.";
          gc.source = "(" + w1 + ") * sum(map(face in faces(state), "
                      "count(cell in face, cell != nth(face, 0))))";
        } else if (variant == 2) {
          gc.description = "Constant estimate (uninformed).";
          gc.source = "(" + w1 + ")";
        } else {
          gc.description = "Weighted count of non-uniform faces.";
          gc.source = "(" + w1 + ") * sum(map(face in faces(state), "
                      "if uniform(face) then 0 else 1))";
        }
        break;
      case DomainId::game24:
        if (variant == 1) {
          gc.description = "Distance of the closest single number to 24.";
          gc.source = "(" + w1 + ") * min(map(x in state, abs(target - x)))";
        } else if (variant == 2) {
          gc.description = "Number of operations still required.";
          gc.source = "(" + w1 + ") * (len(state) - 1)";
        } else {
          gc.description = "Weighted combination of closest-number gap and remaining count.";
          gc.source = "(" + w1 + ") * min(map(x in state, abs(target - x))) + (" + w2 +
                      ") * (len(state) - 1)";
        }
        break;
      case DomainId::blocksworld:
        if (variant == 1) {
          gc.description = "Counts misplaced blocks only.";
          gc.source = "(" + w1 + ") * sum(map(g in goal, "
                      "sum(map(c in filter(r in state, block(r) == block(g)), "
                      "if support(c) == support(g) then 0 else 1))))";
        } else if (variant == 2) {
          gc.description = "Constant estimate (uninformed).";
          gc.source = "(" + w1 + ")";
        } else {
          gc.description = "Weighted misplaced blocks plus height differences.";
          gc.source = "sum(map(g in goal, sum(map(c in filter(r in state, "
                      "block(r) == block(g)), if support(c) == support(g) then 0 else (" +
                      w1 + ") + (" + w2 + ") * abs(height(c) - height(g))))))";
        }
        break;
    }
    return gc;
  }

  DomainId domain_;
  std::mt19937_64 rng_;
};

class BrokenGenerator : public GeneratorPort {
 public:
  GeneratedCandidate propose() override { return broken("propose"); }
  GeneratedCandidate explore(const std::vector<Candidate>&, int t) override {
    GeneratedCandidate gc = broken("explore");
    gc.evolution_type = t;
    return gc;
  }
  GeneratedCandidate modify(const std::vector<Candidate>&, int t) override {
    GeneratedCandidate gc = broken("modify");
    gc.evolution_type = t;
    return gc;
  }

 private:
  GeneratedCandidate broken(const char* op) {
    GeneratedCandidate gc;
    gc.operator_name = op;
    gc.description = "not a heuristic";
    gc.source = "this is not ) a ( program " + std::to_string(counter_++);
    return gc;
  }
  int counter_ = 0;
};

}  // namespace

std::unique_ptr<GeneratorPort> make_stub_generator(DomainId domain, std::uint64_t seed) {
  return std::make_unique<StubGenerator>(domain, seed);
}

std::unique_ptr<GeneratorPort> make_broken_generator() {
  return std::make_unique<BrokenGenerator>();
}

}  // namespace autohd
