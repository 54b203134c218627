#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "autohd/bench.hpp"
#include "autohd/domains.hpp"
#include "autohd/evolution.hpp"

using namespace autohd;

namespace {

std::vector<PlanningTask> cube_validation(int n, std::uint64_t seed) {
  DatasetSpec spec;
  spec.bucket_counts = {{1, n / 2}, {2, n - n / 2}};
  return gen_dataset(DomainId::cube2x2, spec, seed);
}

EvolutionConfig small_config() {
  EvolutionConfig cfg;
  cfg.b = 4;
  cfg.generations = 2;
  cfg.seed = 9;
  cfg.search = default_config(DomainId::cube2x2);
  cfg.search.algorithm = Algorithm::astar;
  return cfg;
}

// Emits the same source on every call; exercises id-based deduplication.
class ConstantGenerator : public GeneratorPort {
 public:
  GeneratedCandidate propose() override { return make("propose", 0); }
  GeneratedCandidate explore(const std::vector<Candidate>&, int t) override {
    return make("explore", t);
  }
  GeneratedCandidate modify(const std::vector<Candidate>&, int t) override {
    return make("modify", t);
  }

 private:
  GeneratedCandidate make(const char* op, int type) {
    GeneratedCandidate gc;
    gc.operator_name = op;
    gc.evolution_type = type;
    gc.description = "always the same";
    gc.source = "sum(map(face in faces(state), if uniform(face) then 0 else 1))";
    return gc;
  }
};

// Fails transiently a fixed number of times before succeeding.
class FlakyGenerator : public GeneratorPort {
 public:
  explicit FlakyGenerator(int failures) : remaining_(failures) {}
  GeneratedCandidate propose() override {
    if (remaining_-- > 0) throw std::runtime_error("transient failure");
    GeneratedCandidate gc;
    gc.operator_name = "propose";
    gc.description = "faces";
    gc.source = "6 - count(face in faces(state), uniform(face))";
    return gc;
  }
  GeneratedCandidate explore(const std::vector<Candidate>&, int) override { return propose(); }
  GeneratedCandidate modify(const std::vector<Candidate>&, int) override { return propose(); }

 private:
  int remaining_;
};

}  // namespace

TEST_CASE("init_population asks the stub for exactly b parsed candidates") {
  auto gen = make_stub_generator(DomainId::cube2x2, 1);
  EvolutionConfig cfg = small_config();
  const Population pop = init_population(*gen, 4, DomainId::cube2x2, cfg, nullptr);
  CHECK(pop.members.size() == 4);
  for (const Candidate& c : pop.members) CHECK_FALSE(c.disqualified);
  CHECK_THROWS_AS(init_population(*gen, 1, DomainId::cube2x2, cfg, nullptr),
                  std::invalid_argument);
}

TEST_CASE("an always-broken generator yields disqualified placeholders, not a crash") {
  auto gen = make_broken_generator();
  EvolutionConfig cfg = small_config();
  cfg.generations = 1;
  const auto validation = cube_validation(4, 41);
  const Archive archive = evolve(*gen, DomainId::cube2x2, validation, cfg);
  REQUIRE(archive.generations.size() == 2);
  for (const GenerationRecord& rec : archive.generations)
    for (const Candidate& c : rec.members) {
      CHECK(c.disqualified);
      CHECK(c.validation_accuracy == 0.0);
    }
}

TEST_CASE("transient generator failures are retried within the cap") {
  EvolutionConfig cfg = small_config();
  cfg.retry_cap = 2;
  FlakyGenerator twice(2);
  const Population pop = init_population(twice, 2, DomainId::cube2x2, cfg, nullptr);
  CHECK(pop.members.size() == 2);

  FlakyGenerator hopeless(100);
  CHECK_THROWS_WITH_AS(init_population(hopeless, 2, DomainId::cube2x2, cfg, nullptr),
                       doctest::Contains("generator failed after 3 attempts"),
                       std::runtime_error);
}

TEST_CASE("evaluate_candidate scores the reference cube heuristic at 1.0") {
  const auto validation = cube_validation(10, 43);
  const WorldModel model = ground_truth_model(DomainId::cube2x2);
  SearchConfig cfg = default_config(DomainId::cube2x2);
  cfg.algorithm = Algorithm::astar;
  const Candidate c = evaluate_candidate(builtin("cube_nonuniform_faces"), validation, model, cfg);
  CHECK(c.validation_accuracy == 1.0);
  CHECK(c.mean_expansions >= 0.0);

  // Deterministic across evaluations.
  const Candidate again =
      evaluate_candidate(builtin("cube_nonuniform_faces"), validation, model, cfg);
  CHECK(c.validation_accuracy == again.validation_accuracy);
  CHECK(c.mean_expansions == again.mean_expansions);
  CHECK(c.fault_count == again.fault_count);

  CHECK_THROWS_AS(evaluate_candidate(builtin("cube_nonuniform_faces"), {}, model, cfg),
                  std::invalid_argument);
}

TEST_CASE("step_generation keeps the strongest candidate and respects the bound") {
  const auto validation = cube_validation(6, 47);
  const WorldModel model = ground_truth_model(DomainId::cube2x2);
  EvolutionConfig cfg = small_config();
  auto gen = make_stub_generator(DomainId::cube2x2, 5);

  Population pop = init_population(*gen, 4, DomainId::cube2x2, cfg, nullptr);
  for (Candidate& c : pop.members)
    c = evaluate_candidate(c.program, validation, model, cfg.search, cfg.limits, 0);

  Candidate pool_best;
  const Population next =
      step_generation(pop, *gen, DomainId::cube2x2, validation, model, cfg, nullptr, &pool_best);
  CHECK(next.generation_index == 1);
  CHECK(next.members.size() <= 4);
  for (const Candidate& c : next.members)
    CHECK(c.validation_accuracy <= pool_best.validation_accuracy);

  // Selection soundness inside the survivors: no kept candidate is weaker
  // than the pool best minus the kept set ordering.
  for (size_t i = 1; i < next.members.size(); ++i)
    CHECK(next.members[i - 1].validation_accuracy >= next.members[i].validation_accuracy);
}

TEST_CASE("duplicate sources collapse to one pool entry") {
  const auto validation = cube_validation(4, 53);
  const WorldModel model = ground_truth_model(DomainId::cube2x2);
  EvolutionConfig cfg = small_config();
  ConstantGenerator gen;

  Population pop = init_population(gen, 4, DomainId::cube2x2, cfg, nullptr);
  Candidate pool_best;
  const Population next =
      step_generation(pop, gen, DomainId::cube2x2, validation, model, cfg, nullptr, &pool_best);
  // 2b identical candidates deduplicate to one, floor(1/2) = 0 is clamped to
  // keep at least the best.
  CHECK(next.members.size() == 1);
}

TEST_CASE("evolve produces K+1 generation records with a nondecreasing running max") {
  const auto validation = cube_validation(6, 59);
  EvolutionConfig cfg = small_config();
  cfg.generations = 3;
  auto gen = make_stub_generator(DomainId::cube2x2, 21);
  const Archive archive = evolve(*gen, DomainId::cube2x2, validation, cfg);

  REQUIRE(archive.generations.size() == 4);
  double running = -1.0;
  for (const GenerationRecord& rec : archive.generations) {
    const double best_so_far = std::max(running, rec.best.validation_accuracy);
    CHECK(best_so_far >= running);
    running = best_so_far;
  }
  CHECK(archive.global_best.validation_accuracy == running);
  CHECK(archive.global_best.validation_accuracy >=
        archive.generations.front().best.validation_accuracy);
}

TEST_CASE("evolve is bit-identical for a fixed seed and stub") {
  const auto validation = cube_validation(5, 61);
  EvolutionConfig cfg = small_config();
  auto gen1 = make_stub_generator(DomainId::cube2x2, 77);
  auto gen2 = make_stub_generator(DomainId::cube2x2, 77);
  const std::string a = archive_to_json(evolve(*gen1, DomainId::cube2x2, validation, cfg));
  const std::string b = archive_to_json(evolve(*gen2, DomainId::cube2x2, validation, cfg));
  CHECK(a == b);
}

TEST_CASE("lineage records the operator rotation") {
  const auto validation = cube_validation(4, 67);
  EvolutionConfig cfg = small_config();
  cfg.generations = 2;
  auto gen = make_stub_generator(DomainId::cube2x2, 31);
  const Archive archive = evolve(*gen, DomainId::cube2x2, validation, cfg);

  std::vector<int> explore_types;
  std::vector<int> modify_types;
  for (const LineageEntry& e : archive.lineage) {
    if (e.generation != 1) continue;
    if (e.operator_name == "explore") explore_types.push_back(e.evolution_type);
    if (e.operator_name == "modify") modify_types.push_back(e.evolution_type);
  }
  CHECK(explore_types == std::vector<int>{1, 2, 1, 2});
  CHECK(modify_types == std::vector<int>{3, 4, 3, 4});
  for (const LineageEntry& e : archive.lineage) {
    if (e.operator_name == "modify") CHECK(e.evolution_type != 1);
    if (e.operator_name == "propose") {
      CHECK(e.evolution_type == 0);
      CHECK(e.generation == 0);
      CHECK(e.parent_ids.empty());
    } else {
      CHECK_FALSE(e.parent_ids.empty());
    }
  }
}

TEST_CASE("archives round-trip through JSON") {
  const auto validation = cube_validation(4, 71);
  EvolutionConfig cfg = small_config();
  cfg.generations = 1;
  auto gen = make_stub_generator(DomainId::cube2x2, 13);
  const Archive archive = evolve(*gen, DomainId::cube2x2, validation, cfg);
  const Archive reloaded = archive_from_json(archive_to_json(archive));
  CHECK(archive_to_json(reloaded) == archive_to_json(archive));
  CHECK(reloaded.global_best.program.id == archive.global_best.program.id);
  CHECK(reloaded.generations.size() == archive.generations.size());
  CHECK(reloaded.lineage.size() == archive.lineage.size());
}

TEST_CASE("population bound holds across every generation") {
  const auto validation = cube_validation(4, 73);
  EvolutionConfig cfg = small_config();
  cfg.generations = 4;
  auto gen = make_stub_generator(DomainId::cube2x2, 99);
  const Archive archive = evolve(*gen, DomainId::cube2x2, validation, cfg);
  for (const GenerationRecord& rec : archive.generations)
    CHECK(static_cast<int>(rec.members.size()) <= cfg.b);
}
