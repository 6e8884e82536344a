#pragma once

#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lfs/env.hpp"
#include "lfs/prompts.hpp"

namespace lfs {

// Parsed payload for one prompt kind: a distribution or per-action values in
// weights, a scalar state value, or an explore flag.
struct EvalPayload {
    PromptKind kind = PromptKind::StateValue;
    std::map<int, double> weights;
    double scalar = 0.0;
    bool explore = false;
};

struct EvaluatorResponse {
    PromptKind kind = PromptKind::StateValue;
    EvalPayload payload;
    long long prompt_tokens = 0;     // summed over parse retries
    long long completion_tokens = 0; // summed over parse retries
    std::string raw_text;
    bool fallback = false;
};

// Hard cap on cumulative prompt + completion tokens for one run. The check
// happens before each call, so used may overshoot by at most one call's cost.
struct TokenBudget {
    long long limit = 0;
    long long used = 0;

    bool exhausted() const { return used >= limit; }
};

enum class BackendKind { LiveAPI, Oracle, Replay };

std::string backend_kind_name(BackendKind kind);
BackendKind backend_kind_from_name(const std::string& name);

struct BackendConfig {
    BackendKind backend = BackendKind::Oracle;
    std::string endpoint = "https://api.openai.com/v1/chat/completions";
    std::string model = "gpt-4o";
    double temperature = 0.0;
    int max_completion_tokens = 16384;
    int timeout_seconds = 300;
    std::string reasoning_effort; // empty = not a reasoning model; "low" otherwise
    int max_parse_retries = 2;
    int max_transport_retries = 4;
    int max_concurrent_requests = 8;
    std::string api_key_env = "OPENAI_API_KEY";
    std::string replay_path; // Replay backend call log
};

// Extracts the last brace-balanced \boxed{...} region from raw_text, parses
// the JSON object inside, validates the field for the prompt kind, and
// normalizes: distributions are renormalized when the sum is within 0.1 of
// 1.0 (missing offered indices filled with 0 first), scalars and per-action
// values clamp to [0, 1]. Throws ParseError on anything else.
EvalPayload parse_response(PromptKind kind, const std::string& raw_text,
                           const std::vector<int>& offered_indices);

struct EvalRequest {
    PromptKind kind = PromptKind::StateValue;
    RenderedPrompt prompt;
    const SearchState* state = nullptr;
    const std::vector<ActionDescriptor>* actions = nullptr;
};

struct BackendReply {
    std::string text;
    long long prompt_tokens = 0;
    long long completion_tokens = 0;
};

class Backend {
public:
    virtual ~Backend() = default;
    virtual BackendReply complete(const EvalRequest& request) = 0;
};

// Exact-solver backend: answers every prompt from exhaustive reachability.
// State value is 1 iff the state can still be completed; action values score
// the stepped child states; priors normalize the action values (uniform when
// all zero); explore is advised exactly when the current state is lost.
// Token costs are approximated as ceil(chars / 4) of prompt and answer.
std::shared_ptr<Backend> make_oracle_backend();

// Replays a recorded call log (JSON-lines) in sequence, verifying the prompt
// hash of every call. Any mismatch is a TransportError.
std::shared_ptr<Backend> make_replay_backend(const std::string& path);

// OpenAI-compatible chat-completions client. The API key is read from the
// environment variable named in the config; never from the config itself.
std::shared_ptr<Backend> make_live_backend(const BackendConfig& config);

std::shared_ptr<Backend> make_backend(const BackendConfig& config);

// Fingerprint stored in call logs and verified on replay.
std::string prompt_fingerprint(const RenderedPrompt& prompt);

// Renders, enforces the budget, calls the backend, parses, retries on parse
// failures, and falls back to neutral payloads when retries are spent.
// One instance per run; not thread-safe.
class Evaluator {
public:
    Evaluator(std::shared_ptr<Backend> backend, BackendConfig config);
    ~Evaluator();

    // Appends one JSONL record per actual backend call (including retries),
    // producing a log a Replay backend can consume.
    void record_calls_to(const std::string& path);

    EvaluatorResponse evaluate(PromptKind kind, const SearchState& state,
                               const std::vector<ActionDescriptor>& actions,
                               TokenBudget& budget);

private:
    std::shared_ptr<Backend> backend_;
    BackendConfig config_;
    std::unique_ptr<std::ofstream> recorder_;
};

} // namespace lfs
