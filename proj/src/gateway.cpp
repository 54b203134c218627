#include "autohd/gateway.hpp"

#include <cctype>
#include <cstdlib>
#include <deque>
#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include <httplib.h>
#include <json.hpp>

#include "autohd/blocksworld.hpp"
#include "autohd/domains.hpp"
#include "autohd/game24.hpp"

namespace autohd::gw {

using nlohmann::json;

namespace {

// ---------------------------------------------------------------------------
// Template bodies. The shared language paragraph replaces the scripting
// instructions; everything else stays as shipped.

const char* kLanguageOps =
    "The language provides numbers, + - * /, comparisons, 'and', 'or', "
    "'if ... then ... else ...', 'let name = expr in expr', and the functions map, filter, "
    "count, sum, min, max, len, abs, zip, range, nth, append, concat, flatten, list.";

std::string bw_intro() {
  return
      "I need help designing a new heuristic function to solve blocksworld problem. You are "
      "given 2 strings - current state of blocks and a final desired state. The goal is to "
      "design an appropriate heuristic that can be used to solve how far current state is from "
      "final state.\n"
      "\n"
      "Here is an example problem:\n"
      "Initial state: the red block is clear, the yellow block is clear, the hand is empty, "
      "the red block is on top of the blue block, the yellow block is on top of the orange "
      "block, the blue block is on the table and the orange block is on the table\n"
      "Final state: the orange block is clear, the yellow block is clear, the hand is empty, "
      "the orange block is on top of the red block, the red block is on top of the blue block, "
      "the blue block is on the table, and the yellow block is on the table.\n"
      "\n"
      "Here is another example problem:\n"
      "Initial state: the blue block is clear, the orange block is in the hand, the red block "
      "is clear, the yellow block is clear, the hand is holding the orange block, the blue "
      "block is on the table, the red block is on the table, and the yellow block is on the "
      "table.\n"
      "Final state: the orange block is clear, the red block is clear, the yellow block is "
      "clear, the hand is empty, the red block is on top of the blue block, the blue block is "
      "on the table, the orange block is on the table, and the yellow block is on the table.\n";
}

std::string bw_implement() {
  return std::string(
             "Next, implement it as a single expression in the heuristic language. The "
             "expression may reference 2 bound names:\n"
             "1. 'state' - The current state of blocks, a list of (block, support, height) "
             "rows.\n"
             "2. 'goal' - The final state of blocks, a list of (block, support, height) rows.\n"
             "Rows are read with block(row), support(row) and height(row); a support is "
             "another block, TABLE or HAND. ") +
         kLanguageOps +
         "\n"
         "\n"
         "The expression must evaluate to one number: 'heuristic_val', which is the heuristic "
         "value calculated for the current state of the blocks with respect to final goal "
         "state.\n";
}

std::string g24_intro() {
  return
      "I need help designing a new heuristic function to solve Game 24 problem. In Game 24, "
      "you are given a list of numbers that need to be used with any operation '+', '-', '*', "
      "'/' to obtain the goal, which is [24]. You need to design an appropriate heuristic that "
      "can be used to solve how far current state is from final state.\n"
      "\n"
      "Here is an example problem:\n"
      "Current State: [4, 4, 6, 8]  # (4 + 8) * (6 - 4) = 24\n"
      "Final State: [24]\n"
      "\n"
      "Here is another example problem:\n"
      "Current State: [4, 6]  # 4 * 6 = 24\n"
      "Final State: [24]\n"
      "\n"
      "Here is another example problem:\n"
      "Current State: [8, 4, 1, 8]  # (8 / 4 + 1) * 8 = 24\n"
      "Final State: [24]\n"
      "\n"
      "Here is another example problem:\n"
      "Current State: [5, 5, 5, 9]  # 5 + 5 + 5 + 9 = 24\n"
      "Final State: [24]\n"
      "\n"
      "Here is another example problem:\n"
      "Current State: [24]\n"
      "Final State: [24]\n";
}

std::string g24_implement(bool evolution) {
  return std::string(evolution
                         ? "Thirdly, implement it as a single expression in the heuristic "
                           "language. The expression may reference 2 bound names:\n"
                         : "Next, implement it as a single expression in the heuristic "
                           "language. The expression may reference 2 bound names, and must not "
                           "modify them:\n") +
         "1. 'state' - The current state, a list of numbers that has to be used to obtain the "
         "goal.\n"
         "2. 'target' - The goal number, 24.\n" +
         kLanguageOps +
         "\n"
         "\n"
         "The expression must evaluate to a single number, heuristic_val, representing the "
         "feasibility of reaching the goal, considering any operation using (+, -, *, /) with "
         "the current state. For eg: (a+b, a-b, b-a, a*b, a/b, b/a).\n"
         "It must return 0 if the goal is achieved, i.e. when 24 is the only number left.\n";
}

std::string cube_intro() {
  return
      "I need help designing a new heuristic function to solve 2x2 Pocket Cube. The problem is "
      "defined as the following. Your task is to restore a scrambled 2x2 Rubik's Cube to its "
      "original state. All the given problems can be solved in 1 to 4 moves. You cannot exceed "
      "more than 11 moves. Provide the sequence of moves required for the restoration. Please "
      "follow the instructions and rules below to complete the solving:\n"
      "1. A 2x2 Pocket Cube has six faces, namely: [Upper, Front, Bottom, Left, Right, Back] "
      "Each consisting of a 2x2 grid of squares, with each square having its own color.\n"
      "2. Colors in the Cube are represented in numbers: [0, 1, 2, 3, 4, 5]\n"
      "3. The Cube's state is represented as an array of 24 elements. For instance, "
      "[0,0,0,0,1,1,1,1,2,2,2,2,3,3,3,3,4,4,4,4,5,5,5,5]. The Cube's state is represented as "
      "a 24-element array, where each group of 4 consecutive elements corresponds to a face of "
      "the cube in the following order: Upper face: Elements at indices 0 to 3. Right face: "
      "Elements at indices 4 to 7. Front face: Elements at indices 8 to 11. Down face: "
      "Elements at indices 12 to 15. Left face: Elements at indices 16 to 19. Back face: "
      "Elements at indices 20 to 23. Each element within a group represents the color or state "
      "of a specific square on that face.\n"
      "4. A restoration of a Pocket Cube is to move squares in each face to have same numbers. "
      "Some example Restored States are [0,0,0,0,1,1,1,1,2,2,2,2,3,3,3,3,4,4,4,4,5,5,5,5].\n"
      "You must make move to the Cube to achieve a Restored State, not limited to the above "
      "one. Note that we just need each face to have same numbers, no matter which face has "
      "which color.\n";
}

std::string cube_implement(bool evolution) {
  return std::string(evolution ? "Thirdly, implement it as a single expression in the "
                                 "heuristic language. The expression may reference 1 bound "
                                 "name:\n"
                               : "Next, implement it as a single expression in the heuristic "
                                 "language. The expression may reference 1 bound name:\n") +
         "1. 'state' - The current state of 2x2 Cube, a list of 24 numbers.\n"
         "faces(state) splits it into the 6 faces of 4 cells each, and uniform(face) tells "
         "whether a face shows a single color. " +
         kLanguageOps +
         "\n"
         "\n"
         "The expression must evaluate to one number: 'heuristic_val', which is the heuristic "
         "value calculated for the current state of the 2x2 Cube with respect to one of "
         "restored states.\n";
}

std::string propose_body(DomainId domain) {
  switch (domain) {
    case DomainId::blocksworld:
      return bw_intro() +
             "\n"
             "Task:\n"
             "Please design a new heuristic.\n"
             "Firstly, describe your heuristic and main steps in one sentence. Start the "
             "sentence with 'Heuristic Description:'\n"
             "\n" +
             bw_implement() +
             "\n"
             "Do not give additional explanations.";
    case DomainId::game24:
      return g24_intro() +
             "\n"
             "Task:\n"
             "Please design a new heuristic.\n"
             "Firstly, describe your heuristic and main steps in one sentence. Start the "
             "sentence with 'Heuristic Description:'\n"
             "\n" +
             g24_implement(false) +
             "\n"
             "Do not give additional explanations. Do not use any tools. Return your response "
             "as code in the heuristic language.";
    case DomainId::cube2x2:
      return cube_intro() +
             "Task:\n"
             "Please design a new heuristic.\n"
             "Firstly, describe your heuristic and main steps in one sentence. Start the "
             "sentence with 'Heuristic Description:'\n"
             "\n" +
             cube_implement(false) +
             "\n"
             "Do not give additional explanations.";
  }
  return "";
}

std::string bw_implement_evolution() {
  std::string text = bw_implement();
  const std::string from = "Next, implement it";
  const std::string to = "Thirdly, implement it";
  return to + text.substr(from.size());
}

std::string evolve_body(DomainId domain) {
  const std::string firstly =
      "Firstly, identify the common idea in the provided heuristics in one sentence. Start "
      "the sentence with 'Common Idea:'\n"
      "Secondly, based on the backbone idea describe your new heuristic in one sentence. "
      "Start the sentence with 'Heuristic Description:'\n";
  switch (domain) {
    case DomainId::blocksworld:
      return bw_intro() +
             "\n"
             "<existing_heuristics>\n"
             "\n"
             "Task:\n"
             "<evolution_type>\n" +
             firstly + bw_implement_evolution() +
             "\n"
             "Do not give additional explanations.";
    case DomainId::game24:
      return g24_intro() +
             "\n"
             "<existing_heuristics>\n"
             "\n"
             "Task:\n"
             "<evolution_type>\n"
             "\n" +
             firstly + g24_implement(true) +
             "\n"
             "Do not give additional explanations. Do not use any tools. Return your response "
             "as code in the heuristic language.";
    case DomainId::cube2x2:
      return cube_intro() +
             "\n"
             "<existing_heuristics>\n"
             "\n"
             "Task:\n"
             "<evolution_type>\n" +
             firstly + cube_implement(true) +
             "\n"
             "Do not give additional explanations.";
  }
  return "";
}

const char* kEvolutionTypes[4] = {
    "Please help me create a new heuristic that has a totally different form from the given "
    "ones.",
    "Please help me create a new heuristic that has a totally different form from the given "
    "ones but can be motivated from them.",
    "Please assist me in creating a new heuristic that has a different form but can be a "
    "modified version of the heuristic provided.",
    "Please identify the main heuristic parameters and assist me in creating a new heuristic "
    "that has a different parameter settings of the score function provided.",
};

std::string actions_body(DomainId domain) {
  if (domain == DomainId::blocksworld)
    return
        "You are operating a robot hand in a blocks world. Actions take one of these forms:\n"
        "pick up the X block\n"
        "put down the X block\n"
        "stack the X block on top of the Y block\n"
        "unstack the X block from on top of the Y block\n"
        "\n"
        "Current state: <state_text>\n"
        "\n"
        "List every action that can be applied in the current state, one action per line. Do "
        "not give additional explanations.";
  return
      "You are playing Game 24. An action combines two of the remaining numbers with one of "
      "'+', '-', '*', '/', written like '4 * 6'.\n"
      "\n"
      "Current state: <state_text>\n"
      "\n"
      "List every action that can be applied in the current state, one action per line. Do "
      "not give additional explanations.";
}

std::string transition_body(DomainId domain) {
  if (domain == DomainId::blocksworld)
    return
        "You are operating a robot hand in a blocks world.\n"
        "\n"
        "Current state: <state_text>\n"
        "Action: <action_text>\n"
        "\n"
        "Describe the state after applying the action, using the same phrase forms as the "
        "current state description. Do not give additional explanations.";
  return
      "You are playing Game 24.\n"
      "\n"
      "Current state: <state_text>\n"
      "Action: <action_text>\n"
      "\n"
      "Give the list of numbers after applying the action, written like [1, 2, 3]. Do not "
      "give additional explanations.";
}

std::map<std::string, PromptTemplate> build_templates() {
  std::map<std::string, PromptTemplate> out;
  for (DomainId domain :
       {DomainId::blocksworld, DomainId::game24, DomainId::cube2x2}) {
    const std::string d = domain_name(domain);
    out["propose_" + d] = {"propose_" + d, propose_body(domain), domain};
    out["evolve_" + d] = {"evolve_" + d, evolve_body(domain), domain};
    if (domain != DomainId::cube2x2) {
      out["actions_" + d] = {"actions_" + d, actions_body(domain), domain};
      out["transition_" + d] = {"transition_" + d, transition_body(domain), domain};
    }
  }
  for (int t = 1; t <= 4; ++t) {
    const std::string name = "evolution_type_" + std::to_string(t);
    out[name] = {name, kEvolutionTypes[t - 1], DomainId::blocksworld};
  }
  return out;
}

const std::map<std::string, PromptTemplate>& templates() {
  static const std::map<std::string, PromptTemplate> t = build_templates();
  return t;
}

bool marker_at(const std::string& body, size_t pos, std::string* name) {
  if (body[pos] != '<') return false;
  size_t end = pos + 1;
  while (end < body.size() && (std::islower(static_cast<unsigned char>(body[end])) ||
                               body[end] == '_'))
    ++end;
  if (end >= body.size() || body[end] != '>' || end == pos + 1) return false;
  *name = body.substr(pos + 1, end - pos - 1);
  return true;
}

// ---------------------------------------------------------------------------
// Completion clients

struct ParsedUrl {
  std::string host_part;  // scheme://host[:port]
  std::string path_prefix;
};

ParsedUrl split_url(const std::string& base_url) {
  const size_t scheme = base_url.find("://");
  if (scheme == std::string::npos)
    throw GatewayError(GatewayErrorKind::permanent, "base_url needs a scheme: " + base_url);
  const size_t path = base_url.find('/', scheme + 3);
  if (path == std::string::npos) return {base_url, ""};
  std::string prefix = base_url.substr(path);
  while (!prefix.empty() && prefix.back() == '/') prefix.pop_back();
  return {base_url.substr(0, path), prefix};
}

class HttpClient : public CompletionClient {
 public:
  explicit HttpClient(ModelEndpoint endpoint)
      : endpoint_(std::move(endpoint)), limiter_(endpoint_.rate_limit_per_minute) {}

  std::string complete(const std::string& prompt, double temperature) override {
    if (endpoint_.base_url.empty())
      throw GatewayError(GatewayErrorKind::permanent,
                         "no endpoint configured (set AUTOHD_BASE_URL)");
    if (endpoint_.timeout_ms <= 0)
      throw GatewayError(GatewayErrorKind::transport, "endpoint timeout is zero");

    const ParsedUrl url = split_url(endpoint_.base_url);
    const json payload = {{"model", endpoint_.model_name},
                          {"messages", json::array({json{{"role", "user"},
                                                         {"content", prompt}}})},
                          {"temperature", temperature}};
    const std::string body = payload.dump();

    std::string last_error;
    {
      std::lock_guard<std::mutex> lock(stats_mu_);
      stats_.last_retries = 0;
    }
    for (int attempt = 0; attempt <= endpoint_.max_retries; ++attempt) {
      if (attempt > 0) {
        std::this_thread::sleep_for(
            std::chrono::milliseconds(endpoint_.backoff_ms << (attempt - 1)));
        std::lock_guard<std::mutex> lock(stats_mu_);
        ++stats_.last_retries;
      }
      limiter_.acquire();
      httplib::Client cli(url.host_part);
      cli.set_connection_timeout(0, endpoint_.timeout_ms * 1000);
      cli.set_read_timeout(0, endpoint_.timeout_ms * 1000);
      httplib::Headers headers;
      if (!endpoint_.api_key.empty())
        headers.emplace("Authorization", "Bearer " + endpoint_.api_key);
      {
        std::lock_guard<std::mutex> lock(stats_mu_);
        ++stats_.network_calls;
      }
      httplib::Result res =
          cli.Post(url.path_prefix + "/chat/completions", headers, body, "application/json");
      if (!res) {
        last_error = "transport failure: " + httplib::to_string(res.error());
        continue;
      }
      if (res->status == 429 || res->status >= 500) {
        last_error = "HTTP " + std::to_string(res->status);
        continue;
      }
      if (res->status >= 400)
        throw GatewayError(GatewayErrorKind::permanent,
                           "HTTP " + std::to_string(res->status) + ": " + res->body);
      try {
        const json reply = json::parse(res->body);
        return reply.at("choices").at(0).at("message").at("content").get<std::string>();
      } catch (const json::exception& e) {
        throw GatewayError(GatewayErrorKind::permanent,
                           std::string("malformed completion response: ") + e.what());
      }
    }
    throw GatewayError(GatewayErrorKind::transport,
                       "retries exhausted after " + std::to_string(endpoint_.max_retries + 1) +
                           " attempts; last error: " + last_error);
  }

  const ClientStats& stats() const override { return stats_; }

 private:
  ModelEndpoint endpoint_;
  RateLimiter limiter_;
  mutable std::mutex stats_mu_;
  ClientStats stats_;
};

class FixtureClient : public CompletionClient {
 public:
  FixtureClient(std::string dir, FixtureFill fill) : dir_(std::move(dir)), fill_(std::move(fill)) {}

  std::string complete(const std::string& prompt, double) override {
    const std::filesystem::path path =
        std::filesystem::path(dir_) / (fixture_key(prompt) + ".txt");
    {
      std::ifstream in(path);
      if (in) {
        std::lock_guard<std::mutex> lock(mu_);
        ++stats_.fixture_hits;
        std::stringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
      }
    }
    if (!fill_)
      throw GatewayError(GatewayErrorKind::fixture_miss,
                         "no fixture for prompt hash " + fixture_key(prompt));
    const std::string response = fill_(prompt);
    std::filesystem::create_directories(dir_);
    std::ofstream out(path);
    out << response;
    return response;
  }

  const ClientStats& stats() const override { return stats_; }

 private:
  std::string dir_;
  FixtureFill fill_;
  std::mutex mu_;
  ClientStats stats_;
};

std::string getenv_or(const char* name, const std::string& fallback) {
  const char* value = std::getenv(name);
  return value ? value : fallback;
}

// ---------------------------------------------------------------------------
// LLM generator port

class LlmGenerator : public GeneratorPort {
 public:
  LlmGenerator(std::shared_ptr<CompletionClient> client, DomainId domain,
               LlmGeneratorOptions options)
      : client_(std::move(client)), domain_(domain), options_(options) {}

  GeneratedCandidate propose() override {
    const std::string prompt =
        render_prompt(prompt_template("propose_" + domain_name(domain_)), {});
    GeneratedCandidate gc = complete_and_extract(prompt, options_.propose_temperature);
    gc.operator_name = "propose";
    return gc;
  }

  GeneratedCandidate explore(const std::vector<Candidate>& existing, int type) override {
    GeneratedCandidate gc =
        evolve_call(existing, type, options_.propose_temperature);
    gc.operator_name = "explore";
    return gc;
  }

  GeneratedCandidate modify(const std::vector<Candidate>& existing, int type) override {
    GeneratedCandidate gc = evolve_call(existing, type, options_.modify_temperature);
    gc.operator_name = "modify";
    return gc;
  }

 private:
  GeneratedCandidate evolve_call(const std::vector<Candidate>& existing, int type,
                                 double temperature) {
    const std::string prompt =
        render_prompt(prompt_template("evolve_" + domain_name(domain_)),
                      {{"existing_heuristics", render_existing_heuristics(existing)},
                       {"evolution_type", evolution_type_text(type)}});
    GeneratedCandidate gc = complete_and_extract(prompt, temperature);
    gc.evolution_type = type;
    for (const Candidate& c : existing) gc.parent_ids.push_back(c.program.id);
    return gc;
  }

  GeneratedCandidate complete_and_extract(const std::string& prompt, double temperature) {
    const std::string response = client_->complete(prompt, temperature);
    ExtractionResult extracted;
    try {
      extracted = extract_heuristic(response);
    } catch (const GatewayError&) {
      extracted = {"", "", response};  // downstream parsing disqualifies it
    }

    GeneratedCandidate gc;
    gc.description = extracted.description;
    gc.source = extracted.code_block;

    if (options_.self_repair) {
      const CompileResult parsed = parse_program(gc.source, domain_);
      if (!parsed.ok()) {
        const std::string repair_prompt =
            prompt + "\n\nYour previous response was:\n" + response +
            "\n\nIt was rejected: " + parsed.error->describe() +
            "\nPlease answer again in the required format.";
        const std::string second = client_->complete(repair_prompt, temperature);
        try {
          const ExtractionResult again = extract_heuristic(second);
          gc.description = again.description;
          gc.source = again.code_block;
        } catch (const GatewayError&) {
          // keep the first attempt; evolution records it as disqualified
        }
      }
    }
    return gc;
  }

  std::shared_ptr<CompletionClient> client_;
  DomainId domain_;
  LlmGeneratorOptions options_;
};

std::vector<std::string> split_lines(const std::string& text) {
  std::vector<std::string> lines;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    size_t start = line.find_first_not_of(" \t");
    if (start == std::string::npos) continue;
    // Strip list bullets: "- item", "* item", "1. item", "12) item". A bare
    // leading digit or minus stays (game24 actions start with numbers).
    if ((line[start] == '-' || line[start] == '*') && start + 1 < line.size() &&
        line[start + 1] == ' ') {
      start += 2;
    } else {
      size_t digits = start;
      while (digits < line.size() && std::isdigit(static_cast<unsigned char>(line[digits])))
        ++digits;
      if (digits > start && digits < line.size() &&
          (line[digits] == '.' || line[digits] == ')') && digits + 1 < line.size() &&
          line[digits + 1] == ' ')
        start = digits + 2;
    }
    while (start < line.size() && line[start] == ' ') ++start;
    if (start < line.size()) lines.push_back(line.substr(start));
  }
  return lines;
}

}  // namespace

RateLimiter::RateLimiter(int per_window, std::chrono::milliseconds window)
    : per_window_(per_window), span_(window) {}

void RateLimiter::acquire() {
  using clock = std::chrono::steady_clock;
  std::unique_lock<std::mutex> lock(mu_);
  while (true) {
    const auto now = clock::now();
    while (!window_.empty() && now - window_.front() > span_) window_.pop_front();
    if (static_cast<int>(window_.size()) < per_window_) break;
    const auto wake = window_.front() + span_;
    lock.unlock();
    std::this_thread::sleep_until(wake);
    lock.lock();
  }
  window_.push_back(clock::now());
}

ModelEndpoint endpoint_from_env() {
  ModelEndpoint endpoint;
  endpoint.base_url = getenv_or("AUTOHD_BASE_URL", "");
  endpoint.api_key = getenv_or("AUTOHD_API_KEY", "");
  endpoint.model_name = getenv_or("AUTOHD_MODEL", "default");
  return endpoint;
}

std::string endpoint_to_json(const ModelEndpoint& endpoint) {
  // api_key deliberately omitted.
  const json j = {{"base_url", endpoint.base_url},
                  {"model_name", endpoint.model_name},
                  {"temperature", endpoint.temperature},
                  {"max_retries", endpoint.max_retries},
                  {"rate_limit_per_minute", endpoint.rate_limit_per_minute},
                  {"timeout_ms", endpoint.timeout_ms}};
  return j.dump();
}

const PromptTemplate& prompt_template(const std::string& name) {
  const auto& all = templates();
  auto it = all.find(name);
  if (it == all.end())
    throw GatewayError(GatewayErrorKind::permanent, "unknown prompt template '" + name + "'");
  return it->second;
}

std::vector<std::string> prompt_template_names() {
  std::vector<std::string> names;
  for (const auto& [name, tmpl] : templates()) names.push_back(name);
  return names;
}

std::string evolution_type_text(int type) {
  if (type < 1 || type > 4)
    throw GatewayError(GatewayErrorKind::permanent,
                       "evolution type must be 1..4, got " + std::to_string(type));
  return kEvolutionTypes[type - 1];
}

std::string render_prompt(const PromptTemplate& tmpl,
                          const std::map<std::string, std::string>& slots) {
  std::string out;
  out.reserve(tmpl.body.size());
  for (size_t i = 0; i < tmpl.body.size();) {
    std::string name;
    if (marker_at(tmpl.body, i, &name)) {
      auto it = slots.find(name);
      if (it == slots.end())
        throw GatewayError(GatewayErrorKind::permanent,
                           "missing slot '" + name + "' for template '" + tmpl.name + "'");
      out += it->second;
      i += name.size() + 2;
    } else {
      out += tmpl.body[i];
      ++i;
    }
  }
  // Slot values themselves must not smuggle markers through.
  for (size_t i = 0; i < out.size(); ++i) {
    std::string name;
    if (marker_at(out, i, &name) && slots.count(name))
      throw GatewayError(GatewayErrorKind::permanent,
                         "unfilled slot marker '" + name + "' after rendering");
  }
  return out;
}

std::string render_existing_heuristics(const std::vector<Candidate>& existing) {
  std::ostringstream out;
  out << "Here are the existing heuristic functions:\n";
  int index = 1;
  for (const Candidate& c : existing) {
    out << "\nHeuristic " << index++ << " (validation accuracy ";
    char acc[16];
    std::snprintf(acc, sizeof(acc), "%.2f", c.validation_accuracy);
    out << acc << "):\n";
    out << "Heuristic Description: " << c.program.description << "\n";
    out << "```\n" << c.program.source << "\n```\n";
  }
  return out.str();
}

std::string fixture_key(const std::string& prompt) { return stable_hash(prompt); }

std::unique_ptr<CompletionClient> make_http_client(const ModelEndpoint& endpoint) {
  return std::make_unique<HttpClient>(endpoint);
}

std::unique_ptr<CompletionClient> make_fixture_client(const std::string& dir, FixtureFill fill) {
  return std::make_unique<FixtureClient>(dir, std::move(fill));
}

std::unique_ptr<CompletionClient> make_client_from_env(const ModelEndpoint& endpoint) {
  const std::string fixtures = getenv_or("AUTOHD_FIXTURES", "");
  if (!fixtures.empty()) return make_fixture_client(fixtures);
  return make_http_client(endpoint);
}

ExtractionResult extract_heuristic(const std::string& response) {
  ExtractionResult result;
  result.raw = response;

  const std::string marker = "Heuristic Description:";
  size_t desc_pos = response.find(marker);
  size_t desc_end = std::string::npos;
  if (desc_pos != std::string::npos) {
    desc_end = response.find('\n', desc_pos);
    std::string desc = response.substr(desc_pos + marker.size(),
                                       desc_end == std::string::npos
                                           ? std::string::npos
                                           : desc_end - desc_pos - marker.size());
    const size_t a = desc.find_first_not_of(" \t");
    const size_t b = desc.find_last_not_of(" \t\r");
    result.description = a == std::string::npos ? "" : desc.substr(a, b - a + 1);
  }

  // First fenced block wins; otherwise everything after the description line.
  const size_t fence = response.find("```");
  if (fence != std::string::npos) {
    size_t body_start = response.find('\n', fence);
    if (body_start != std::string::npos) {
      ++body_start;
      const size_t close = response.find("```", body_start);
      if (close != std::string::npos) {
        std::string code = response.substr(body_start, close - body_start);
        const size_t last = code.find_last_not_of(" \t\r\n");
        result.code_block = last == std::string::npos ? "" : code.substr(0, last + 1);
      }
    }
  }
  if (result.code_block.empty() && desc_end != std::string::npos) {
    std::string rest = response.substr(desc_end + 1);
    const size_t a = rest.find_first_not_of(" \t\r\n");
    const size_t b = rest.find_last_not_of(" \t\r\n");
    if (a != std::string::npos) result.code_block = rest.substr(a, b - a + 1);
  }
  if (result.code_block.empty())
    throw GatewayError(GatewayErrorKind::extraction, "no code region found in response");
  return result;
}

LlmActionsResult llm_actions(CompletionClient& client, DomainId domain,
                             const EncodedState& state, bool legality_filter) {
  if (domain == DomainId::cube2x2)
    throw GatewayError(GatewayErrorKind::permanent,
                       "cube actions come from the fixed move set, not the model");
  const std::string prompt = render_prompt(
      prompt_template("actions_" + domain_name(domain)), {{"state_text", state_text(state)}});

  const WorldModel truth = ground_truth_model(domain);
  const std::vector<EncodedAction> legal = truth.actions_fn(state);

  LlmActionsResult result;
  for (int attempt = 0; attempt < 2; ++attempt) {
    result = LlmActionsResult{};
    const std::string response = client.complete(prompt, 0.0);
    for (const std::string& line : split_lines(response)) {
      EncodedAction action;
      try {
        action = action_from_text(domain, line);
      } catch (const std::exception&) {
        ++result.unparseable_lines;
        continue;
      }
      if (legality_filter) {
        bool is_legal = false;
        for (const EncodedAction& a : legal)
          if (a == action) is_legal = true;
        if (!is_legal) {
          ++result.illegal_dropped;
          continue;
        }
      }
      result.actions.push_back(action);
    }
    if (!result.actions.empty() || result.illegal_dropped > 0) break;
  }
  return result;
}

std::optional<EncodedState> llm_transition(CompletionClient& client, DomainId domain,
                                           const EncodedState& state,
                                           const EncodedAction& action) {
  if (domain == DomainId::cube2x2)
    throw GatewayError(GatewayErrorKind::permanent,
                       "cube transitions use the fixed state transition function");
  const std::string prompt =
      render_prompt(prompt_template("transition_" + domain_name(domain)),
                    {{"state_text", state_text(state)}, {"action_text", action_text(action)}});

  for (int attempt = 0; attempt < 2; ++attempt) {
    const std::string response = client.complete(prompt, 0.0);
    try {
      if (domain == DomainId::blocksworld)
        return encode_state(bw_parse_state(response));
      // game24: find the bracketed list
      const size_t open = response.find('[');
      const size_t close = response.find(']', open);
      if (open == std::string::npos || close == std::string::npos) continue;
      std::vector<Rational> numbers;
      std::string item;
      std::istringstream in(response.substr(open + 1, close - open - 1));
      while (std::getline(in, item, ',')) {
        auto parsed = g24_parse_action(item + " + 0");  // reuse the rational reader
        if (!parsed) throw std::invalid_argument("bad number '" + item + "'");
        numbers.push_back(parsed->lhs);
      }
      Game24State next = g24_make_state(numbers);
      next.history = std::get<Game24State>(state.payload).history;
      next.history.push_back(action_text(action));
      return encode_state(next);
    } catch (const std::exception&) {
      continue;  // re-prompt once, then dead branch
    }
  }
  return std::nullopt;
}

WorldModel model_backed_world(std::shared_ptr<CompletionClient> client, DomainId domain,
                              bool legality_filter, CubeMoveSet move_set) {
  if (domain == DomainId::cube2x2) {
    WorldModel model = ground_truth_model(domain, move_set);
    model.mode = WorldModel::Mode::model_backed;
    return model;
  }
  WorldModel model;
  model.mode = WorldModel::Mode::model_backed;
  model.actions_fn = [client, domain, legality_filter](const EncodedState& s) {
    return llm_actions(*client, domain, s, legality_filter).actions;
  };
  model.transition_fn = [client, domain](const EncodedState& s, const EncodedAction& a) {
    return llm_transition(*client, domain, s, a);
  };
  return model;
}

std::unique_ptr<GeneratorPort> make_llm_generator(std::shared_ptr<CompletionClient> client,
                                                  DomainId domain, LlmGeneratorOptions options) {
  return std::make_unique<LlmGenerator>(std::move(client), domain, options);
}

}  // namespace autohd::gw
