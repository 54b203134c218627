#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "autohd/bench.hpp"
#include "autohd/core.hpp"
#include "autohd/heuristics.hpp"
#include "autohd/search.hpp"

namespace autohd {

struct Candidate {
  HeuristicProgram program;
  bool disqualified = false;       // failed to parse after the retry cap
  double validation_accuracy = 0.0;
  double mean_expansions = 0.0;    // over solved validation instances
  long fault_count = 0;
  int generation_born = 0;
};

struct Population {
  std::vector<Candidate> members;  // size <= b after selection
  int generation_index = 0;
  int b = 0;
};

// What a generator call produced, before parsing.
struct GeneratedCandidate {
  std::string description;
  std::string source;
  std::vector<std::string> parent_ids;
  int evolution_type = 0;  // 1-2 exploration, 3-4 modification, 0 proposal
  std::string operator_name;  // "propose" | "explore" | "modify"
};

// One candidate per call; exploration rotates evolution types 1,2 and
// modification rotates 3,4. Throwing signals a transient failure, retried up
// to the configured cap.
class GeneratorPort {
 public:
  virtual ~GeneratorPort() = default;
  virtual GeneratedCandidate propose() = 0;
  virtual GeneratedCandidate explore(const std::vector<Candidate>& existing,
                                     int evolution_type) = 0;
  virtual GeneratedCandidate modify(const std::vector<Candidate>& existing,
                                    int evolution_type) = 0;
};

struct LineageEntry {
  std::string id;
  std::string operator_name;
  int evolution_type = 0;
  std::vector<std::string> parent_ids;
  int generation = 0;
  bool disqualified = false;
};

struct GenerationRecord {
  int index = 0;
  std::vector<Candidate> members;  // post-selection population
  Candidate best;                  // best of the pre-selection pool
};

struct Archive {
  DomainId domain = DomainId::cube2x2;
  std::uint64_t seed = 0;
  int b = 0;
  int generations_run = 0;
  std::vector<GenerationRecord> generations;  // K+1 records including generation 0
  Candidate global_best;                      // running max across generations
  std::vector<LineageEntry> lineage;
};

struct EvolutionConfig {
  int b = 4;
  int generations = 5;  // K
  std::uint64_t seed = 0;
  int retry_cap = 2;  // extra attempts per slot on parse/transient failure
  SearchConfig search;
  dsl::EvalLimits limits;
  CubeMoveSet move_set = CubeMoveSet::full18;
};

// Runs the configured search over every validation instance; accuracy is the
// fraction solved. Deterministic in ground-truth mode.
Candidate evaluate_candidate(const HeuristicProgram& program,
                             const std::vector<PlanningTask>& validation,
                             const WorldModel& model, const SearchConfig& cfg,
                             const dsl::EvalLimits& limits = {}, int generation_born = 0);

Population init_population(GeneratorPort& gen, int b, DomainId domain,
                           const EvolutionConfig& cfg, std::vector<LineageEntry>* lineage);

Population step_generation(const Population& pop, GeneratorPort& gen, DomainId domain,
                           const std::vector<PlanningTask>& validation, const WorldModel& model,
                           const EvolutionConfig& cfg, std::vector<LineageEntry>* lineage,
                           Candidate* pool_best);

Archive evolve(GeneratorPort& gen, DomainId domain, const std::vector<PlanningTask>& validation,
               const EvolutionConfig& cfg);

std::string archive_to_json(const Archive& archive);
Archive archive_from_json(const std::string& text);

// Deterministic offline generator: proposes weighted variants of the
// reference heuristics, explores alternate forms and modifies weights, all
// drawn from a seeded sequence.
std::unique_ptr<GeneratorPort> make_stub_generator(DomainId domain, std::uint64_t seed);

// Returns unparseable text on every call; exercises the disqualification
// path.
std::unique_ptr<GeneratorPort> make_broken_generator();

}  // namespace autohd
