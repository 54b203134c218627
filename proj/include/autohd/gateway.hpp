#pragma once

#include <chrono>
#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <vector>

#include "autohd/core.hpp"
#include "autohd/evolution.hpp"
#include "autohd/states.hpp"

namespace autohd::gw {

// ---------------------------------------------------------------------------
// Endpoint configuration

struct ModelEndpoint {
  std::string base_url;
  std::string model_name = "default";
  std::string api_key;  // from the environment; never serialized
  double temperature = 0.7;
  int max_retries = 3;
  int rate_limit_per_minute = 600;
  long timeout_ms = 30000;
  long backoff_ms = 500;  // exponential base for transient retries
};

// Reads AUTOHD_BASE_URL / AUTOHD_API_KEY.
ModelEndpoint endpoint_from_env();

// Redacted form for config echoes and logs: no api_key bytes.
std::string endpoint_to_json(const ModelEndpoint& endpoint);

enum class GatewayErrorKind { transport, permanent, extraction, fixture_miss };

class GatewayError : public std::runtime_error {
 public:
  GatewayError(GatewayErrorKind kind, const std::string& msg)
      : std::runtime_error(msg), kind_(kind) {}
  GatewayErrorKind kind() const { return kind_; }

 private:
  GatewayErrorKind kind_;
};

// ---------------------------------------------------------------------------
// Prompt templates

struct PromptTemplate {
  std::string name;
  std::string body;  // with <slot_name> markers
  DomainId domain = DomainId::blocksworld;
};

// Registered template names:
//   propose_<domain>, evolve_<domain>, actions_<domain>, transition_<domain>
// plus evolution_type_1..4 snippet bodies.
const PromptTemplate& prompt_template(const std::string& name);
std::vector<std::string> prompt_template_names();
std::string evolution_type_text(int type);

// Fills every <slot> marker; throws GatewayError(permanent) on a missing
// slot or an unfilled marker left behind.
std::string render_prompt(const PromptTemplate& tmpl,
                          const std::map<std::string, std::string>& slots);

// Deterministic block rendered into the evolution prompts'
// <existing_heuristics> slot.
std::string render_existing_heuristics(const std::vector<Candidate>& existing);

// ---------------------------------------------------------------------------
// Completion clients

struct ClientStats {
  long network_calls = 0;   // HTTP requests actually attempted
  long fixture_hits = 0;
  int last_retries = 0;     // transient retries spent on the last call
};

// Sliding-window limiter shared by concurrent callers; acquire() blocks
// until a slot inside the window frees up.
class RateLimiter {
 public:
  explicit RateLimiter(int per_window,
                       std::chrono::milliseconds window = std::chrono::minutes(1));
  void acquire();

 private:
  std::mutex mu_;
  std::deque<std::chrono::steady_clock::time_point> window_;
  int per_window_;
  std::chrono::milliseconds span_;
};

class CompletionClient {
 public:
  virtual ~CompletionClient() = default;
  virtual std::string complete(const std::string& prompt, double temperature) = 0;
  virtual const ClientStats& stats() const = 0;
};

// Chat-completion JSON over HTTP(S): request {model, messages, temperature},
// response {choices:[{message:{content}}]}. Retries transient failures (429,
// 5xx, transport) with exponential backoff; other 4xx fail permanently.
std::unique_ptr<CompletionClient> make_http_client(const ModelEndpoint& endpoint);

// Looks completions up by prompt hash in a fixture directory
// (<hash>.txt). Optionally records responses produced by `fill` for missing
// prompts, which is how fixture sets are built.
using FixtureFill = std::function<std::string(const std::string& prompt)>;
std::unique_ptr<CompletionClient> make_fixture_client(const std::string& dir,
                                                      FixtureFill fill = nullptr);

// Fixture client when AUTOHD_FIXTURES is set, HTTP client otherwise.
std::unique_ptr<CompletionClient> make_client_from_env(const ModelEndpoint& endpoint);

std::string fixture_key(const std::string& prompt);

// ---------------------------------------------------------------------------
// Response handling

struct ExtractionResult {
  std::string description;  // text after "Heuristic Description:"
  std::string code_block;   // first fenced block, or the region after the line
  std::string raw;
};

// Throws GatewayError(extraction) when no code region is found.
ExtractionResult extract_heuristic(const std::string& response);

// ---------------------------------------------------------------------------
// World-model roles

struct LlmActionsResult {
  std::vector<EncodedAction> actions;
  int illegal_dropped = 0;
  int unparseable_lines = 0;
};

// Actions parsed from a line-list response; with the legality filter on
// (default), proposals outside the ground-truth action set are dropped and
// counted. An unparseable response is re-prompted once, then yields an empty
// list.
LlmActionsResult llm_actions(CompletionClient& client, DomainId domain,
                             const EncodedState& state, bool legality_filter = true);

// Transition predicted by the model; a response that fails the domain state
// grammar is re-prompted once and then marks the branch dead (nullopt).
std::optional<EncodedState> llm_transition(CompletionClient& client, DomainId domain,
                                           const EncodedState& state,
                                           const EncodedAction& action);

// Model-backed A_theta and T_theta. The cube always uses the fixed
// ground-truth transition function.
WorldModel model_backed_world(std::shared_ptr<CompletionClient> client, DomainId domain,
                              bool legality_filter = true,
                              CubeMoveSet move_set = CubeMoveSet::full18);

// ---------------------------------------------------------------------------
// Generator port backed by the gateway

struct LlmGeneratorOptions {
  double propose_temperature = 0.7;  // also used for exploration
  double modify_temperature = 0.2;
  bool self_repair = true;  // one re-prompt with the parse diagnostic
};

std::unique_ptr<GeneratorPort> make_llm_generator(std::shared_ptr<CompletionClient> client,
                                                  DomainId domain,
                                                  LlmGeneratorOptions options = {});

}  // namespace autohd::gw
