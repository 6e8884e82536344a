#include "lfs/evaluator.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <semaphore>
#include <thread>

#include <json.hpp>

#include "lfs/errors.hpp"
#include "lfs/sha256.hpp"

namespace lfs {

using nlohmann::json;

std::string backend_kind_name(BackendKind kind) {
    switch (kind) {
    case BackendKind::LiveAPI: return "live";
    case BackendKind::Oracle: return "oracle";
    case BackendKind::Replay: return "replay";
    }
    return "unknown";
}

BackendKind backend_kind_from_name(const std::string& name) {
    if (name == "live") return BackendKind::LiveAPI;
    if (name == "oracle") return BackendKind::Oracle;
    if (name == "replay") return BackendKind::Replay;
    throw DataError("unknown backend kind: " + name);
}

// ---------------------------------------------------------------------------
// Response parsing
// ---------------------------------------------------------------------------

namespace {

std::string extract_boxed(const std::string& raw) {
    const std::string marker = "\\boxed{";
    size_t pos = raw.rfind(marker);
    if (pos == std::string::npos) throw ParseError("no \\boxed{...} region found");
    size_t open = pos + marker.size() - 1;
    int depth = 0;
    for (size_t i = open; i < raw.size(); ++i) {
        if (raw[i] == '{') ++depth;
        else if (raw[i] == '}') {
            --depth;
            if (depth == 0) return raw.substr(open + 1, i - open - 1);
        }
    }
    throw ParseError("unbalanced braces in \\boxed region");
}

std::map<int, double> parse_index_map(const json& obj, const std::vector<int>& offered) {
    if (!obj.is_object()) throw ParseError("expected a JSON object of index -> number");
    std::map<int, double> out;
    for (const auto& [key, value] : obj.items()) {
        size_t consumed = 0;
        int index = 0;
        try {
            index = std::stoi(key, &consumed);
        } catch (const std::exception&) {
            throw ParseError("non-integer action index: " + key);
        }
        if (consumed != key.size()) throw ParseError("non-integer action index: " + key);
        if (std::find(offered.begin(), offered.end(), index) == offered.end()) {
            throw ParseError("unknown action index: " + key);
        }
        if (!value.is_number()) throw ParseError("non-numeric value for index " + key);
        out[index] = value.get<double>();
    }
    for (int index : offered) {
        if (!out.count(index)) out[index] = 0.0;
    }
    return out;
}

double parse_scalar(const json& value) {
    if (!value.is_number()) throw ParseError("state value is not a number");
    double v = value.get<double>();
    if (!std::isfinite(v)) throw ParseError("state value is not finite");
    return std::clamp(v, 0.0, 1.0);
}

} // namespace

EvalPayload parse_response(PromptKind kind, const std::string& raw_text,
                           const std::vector<int>& offered_indices) {
    std::string inner = extract_boxed(raw_text);
    json obj = json::parse(inner, nullptr, false);
    if (obj.is_discarded() || !obj.is_object()) {
        throw ParseError("boxed region is not a valid JSON object");
    }

    EvalPayload payload;
    payload.kind = kind;
    switch (kind) {
    case PromptKind::ActionPrior: {
        if (!obj.contains("operation_scores")) throw ParseError("missing operation_scores");
        payload.weights = parse_index_map(obj["operation_scores"], offered_indices);
        double sum = 0.0;
        for (const auto& [idx, w] : payload.weights) {
            if (w < 0.0) throw ParseError("negative weight for index " + std::to_string(idx));
            sum += w;
        }
        if (std::abs(sum - 1.0) > 0.1) {
            throw ParseError("operation_scores sum deviates from 1.0 by more than 0.1");
        }
        for (auto& [idx, w] : payload.weights) w /= sum;
        break;
    }
    case PromptKind::StateValue: {
        if (!obj.contains("state_value_estimation")) {
            throw ParseError("missing state_value_estimation");
        }
        payload.scalar = parse_scalar(obj["state_value_estimation"]);
        break;
    }
    case PromptKind::ActionValues: {
        const char* field = obj.contains("operation_values") ? "operation_values"
                            : obj.contains("move_values")    ? "move_values"
                                                             : nullptr;
        if (!field) throw ParseError("missing operation_values / move_values");
        payload.weights = parse_index_map(obj[field], offered_indices);
        for (auto& [idx, w] : payload.weights) w = std::clamp(w, 0.0, 1.0);
        break;
    }
    case PromptKind::ExploreDecision: {
        if (!obj.contains("explore")) throw ParseError("missing explore field");
        const json& v = obj["explore"];
        if (v.is_boolean()) {
            payload.explore = v.get<bool>();
        } else if (v.is_string() && (v == "true" || v == "false")) {
            payload.explore = (v == "true");
        } else {
            throw ParseError("explore field is not a boolean");
        }
        break;
    }
    }
    return payload;
}

// ---------------------------------------------------------------------------
// Token approximation and fingerprints
// ---------------------------------------------------------------------------

namespace {

long long approx_tokens(size_t chars) {
    return static_cast<long long>((chars + 3) / 4);
}

long long approx_prompt_tokens(const RenderedPrompt& prompt) {
    return approx_tokens(prompt.system_text.size()) + approx_tokens(prompt.user_text.size());
}

} // namespace

std::string prompt_fingerprint(const RenderedPrompt& prompt) {
    std::string joined = prompt.system_text;
    joined.push_back('\x1e');
    joined += prompt.user_text;
    return sha256_hex(joined);
}

// ---------------------------------------------------------------------------
// Oracle backend
// ---------------------------------------------------------------------------

namespace {

class OracleBackend : public Backend {
public:
    BackendReply complete(const EvalRequest& request) override {
        const SearchState& state = *request.state;
        const auto& actions = *request.actions;
        json answer;
        switch (request.kind) {
        case PromptKind::StateValue:
            answer["state_value_estimation"] = winnable(state) ? 1.0 : 0.0;
            break;
        case PromptKind::ActionValues: {
            answer[response_field_name(request.kind, state.kind)] = action_values(state, actions);
            break;
        }
        case PromptKind::ActionPrior: {
            json values = action_values(state, actions);
            double sum = 0.0;
            for (const auto& [key, v] : values.items()) sum += v.get<double>();
            json scores;
            for (const auto& [key, v] : values.items()) {
                scores[key] = sum > 0.0 ? v.get<double>() / sum
                                        : 1.0 / static_cast<double>(actions.size());
            }
            answer["operation_scores"] = scores;
            break;
        }
        case PromptKind::ExploreDecision:
            answer["explore"] = !winnable(state);
            break;
        }
        BackendReply reply;
        reply.text = "\\boxed{" + answer.dump() + "}";
        reply.prompt_tokens = approx_prompt_tokens(request.prompt);
        reply.completion_tokens = approx_tokens(reply.text.size());
        return reply;
    }

private:
    countdown::SolveCache cache_;

    bool winnable(const SearchState& state) {
        if (state.kind == TaskKind::Countdown) {
            const auto& s = state.as_countdown();
            return countdown::is_solvable(s.target, s.numbers, &cache_);
        }
        return sudoku::solve_count(state.as_sudoku(), 1) >= 1;
    }

    json action_values(const SearchState& state, const std::vector<ActionDescriptor>& actions) {
        json values = json::object();
        for (const auto& action : actions) {
            StepOutcome outcome = env_step(state, action);
            values[std::to_string(action.index)] = winnable(outcome.next_state) ? 1.0 : 0.0;
        }
        return values;
    }
};

// ---------------------------------------------------------------------------
// Replay backend
// ---------------------------------------------------------------------------

class ReplayBackend : public Backend {
public:
    explicit ReplayBackend(const std::string& path) {
        std::ifstream in(path);
        if (!in) throw TransportError("replay: cannot open call log: " + path);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            records_.push_back(json::parse(line));
        }
    }

    BackendReply complete(const EvalRequest& request) override {
        if (cursor_ >= records_.size()) {
            throw TransportError("replay: call log exhausted at call " +
                                 std::to_string(cursor_));
        }
        const json& rec = records_[cursor_];
        std::string kind = rec.at("kind").get<std::string>();
        if (kind != prompt_kind_name(request.kind)) {
            throw TransportError("replay: prompt kind mismatch at call " +
                                 std::to_string(cursor_) + " (log has " + kind + ")");
        }
        std::string hash = rec.at("prompt_sha256").get<std::string>();
        if (hash != prompt_fingerprint(request.prompt)) {
            throw TransportError("replay: prompt hash mismatch at call " +
                                 std::to_string(cursor_));
        }
        ++cursor_;
        BackendReply reply;
        reply.text = rec.at("response_text").get<std::string>();
        reply.prompt_tokens = rec.at("prompt_tokens").get<long long>();
        reply.completion_tokens = rec.at("completion_tokens").get<long long>();
        return reply;
    }

private:
    std::vector<json> records_;
    size_t cursor_ = 0;
};

} // namespace

std::shared_ptr<Backend> make_oracle_backend() {
    return std::make_shared<OracleBackend>();
}

std::shared_ptr<Backend> make_replay_backend(const std::string& path) {
    return std::make_shared<ReplayBackend>(path);
}

std::shared_ptr<Backend> make_backend(const BackendConfig& config) {
    switch (config.backend) {
    case BackendKind::Oracle: return make_oracle_backend();
    case BackendKind::Replay: return make_replay_backend(config.replay_path);
    case BackendKind::LiveAPI: return make_live_backend(config);
    }
    throw DataError("unknown backend kind");
}

// ---------------------------------------------------------------------------
// Evaluator
// ---------------------------------------------------------------------------

namespace {

EvalPayload fallback_payload(PromptKind kind, const std::vector<ActionDescriptor>& actions) {
    EvalPayload payload;
    payload.kind = kind;
    switch (kind) {
    case PromptKind::ActionPrior:
        for (const auto& a : actions) {
            payload.weights[a.index] = 1.0 / static_cast<double>(actions.size());
        }
        break;
    case PromptKind::StateValue:
        payload.scalar = 0.5;
        break;
    case PromptKind::ActionValues:
        for (const auto& a : actions) payload.weights[a.index] = 0.5;
        break;
    case PromptKind::ExploreDecision:
        payload.explore = false;
        break;
    }
    return payload;
}

} // namespace

Evaluator::Evaluator(std::shared_ptr<Backend> backend, BackendConfig config)
    : backend_(std::move(backend)), config_(std::move(config)) {}

Evaluator::~Evaluator() = default;

void Evaluator::record_calls_to(const std::string& path) {
    recorder_ = std::make_unique<std::ofstream>(path);
    if (!*recorder_) throw DataError("cannot open call recording file: " + path);
}

EvaluatorResponse Evaluator::evaluate(PromptKind kind, const SearchState& state,
                                      const std::vector<ActionDescriptor>& actions,
                                      TokenBudget& budget) {
    EvalRequest request;
    request.kind = kind;
    request.prompt = render_prompt(kind, state, actions);
    request.state = &state;
    request.actions = &actions;

    std::vector<int> offered;
    offered.reserve(actions.size());
    for (const auto& a : actions) offered.push_back(a.index);

    EvaluatorResponse response;
    response.kind = kind;

    int attempts = 1 + std::max(0, config_.max_parse_retries);
    for (int attempt = 0; attempt < attempts; ++attempt) {
        if (budget.exhausted()) {
            throw BudgetExhaustedError("token budget exhausted: " + std::to_string(budget.used) +
                                       " / " + std::to_string(budget.limit));
        }
        BackendReply reply = backend_->complete(request);
        budget.used += reply.prompt_tokens + reply.completion_tokens;
        response.prompt_tokens += reply.prompt_tokens;
        response.completion_tokens += reply.completion_tokens;
        response.raw_text = reply.text;
        if (recorder_) {
            json rec = {{"kind", prompt_kind_name(kind)},
                        {"prompt_sha256", prompt_fingerprint(request.prompt)},
                        {"response_text", reply.text},
                        {"prompt_tokens", reply.prompt_tokens},
                        {"completion_tokens", reply.completion_tokens}};
            *recorder_ << rec.dump() << '\n';
            recorder_->flush();
        }
        try {
            response.payload = parse_response(kind, reply.text, offered);
            return response;
        } catch (const ParseError&) {
            // retry, then fall back below
        }
    }
    response.payload = fallback_payload(kind, actions);
    response.fallback = true;
    return response;
}

} // namespace lfs
