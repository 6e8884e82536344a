#include <chrono>
#include <condition_variable>
#include <cstdlib>
#include <memory>
#include <mutex>
#include <thread>

#ifdef LFS_HAVE_OPENSSL
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif
#include <httplib.h>

#include <json.hpp>

#include "lfs/errors.hpp"
#include "lfs/evaluator.hpp"

namespace lfs {

using nlohmann::json;

namespace {

struct ParsedEndpoint {
    std::string base; // scheme://host[:port]
    std::string path;
};

ParsedEndpoint parse_endpoint(const std::string& endpoint) {
    auto scheme_end = endpoint.find("://");
    if (scheme_end == std::string::npos) {
        throw TransportError("endpoint must include a scheme: " + endpoint);
    }
    auto path_start = endpoint.find('/', scheme_end + 3);
    ParsedEndpoint out;
    if (path_start == std::string::npos) {
        out.base = endpoint;
        out.path = "/v1/chat/completions";
    } else {
        out.base = endpoint.substr(0, path_start);
        out.path = endpoint.substr(path_start);
    }
    return out;
}

long long approx_tokens(size_t chars) {
    return static_cast<long long>((chars + 3) / 4);
}

// Counting semaphore with a runtime cap; caps concurrent in-flight requests
// across all runs sharing this backend.
class RequestGate {
public:
    explicit RequestGate(int cap) : slots_(cap > 0 ? cap : 1) {}

    void acquire() {
        std::unique_lock lock(mu_);
        cv_.wait(lock, [&] { return slots_ > 0; });
        --slots_;
    }

    void release() {
        {
            std::lock_guard lock(mu_);
            ++slots_;
        }
        cv_.notify_one();
    }

private:
    std::mutex mu_;
    std::condition_variable cv_;
    int slots_;
};

class LiveBackend : public Backend {
public:
    explicit LiveBackend(const BackendConfig& config)
        : config_(config), endpoint_(parse_endpoint(config.endpoint)),
          gate_(config.max_concurrent_requests) {
        if (const char* key = std::getenv(config_.api_key_env.c_str())) {
            api_key_ = key;
        }
    }

    BackendReply complete(const EvalRequest& request) override {
        json body;
        body["model"] = config_.model;
        body["messages"] = json::array({
            json{{"role", "system"}, {"content", request.prompt.system_text}},
            json{{"role", "user"}, {"content", request.prompt.user_text}},
        });
        if (config_.reasoning_effort.empty()) {
            body["temperature"] = config_.temperature;
            body["max_tokens"] = config_.max_completion_tokens;
        } else {
            // Reasoning models take an effort level and reject a temperature.
            body["reasoning_effort"] = config_.reasoning_effort;
            body["max_completion_tokens"] = config_.max_completion_tokens;
        }
        std::string payload = body.dump();

        std::string last_error;
        int attempts = 1 + std::max(0, config_.max_transport_retries);
        for (int attempt = 0; attempt < attempts; ++attempt) {
            if (attempt > 0) {
                std::this_thread::sleep_for(std::chrono::seconds(1LL << (attempt - 1)));
            }
            bool retryable = true;
            auto result = post_once(payload, last_error, retryable);
            if (result) return *result;
            if (!retryable) break;
        }
        throw TransportError("chat completion failed: " + last_error);
    }

private:
    BackendConfig config_;
    ParsedEndpoint endpoint_;
    RequestGate gate_;
    std::string api_key_;

    std::unique_ptr<BackendReply> post_once(const std::string& payload, std::string& error,
                                            bool& retryable) {
        gate_.acquire();
        struct Release {
            RequestGate& g;
            ~Release() { g.release(); }
        } release{gate_};

        httplib::Client client(endpoint_.base);
        client.set_connection_timeout(30, 0);
        client.set_read_timeout(config_.timeout_seconds, 0);
        client.set_write_timeout(config_.timeout_seconds, 0);
        httplib::Headers headers;
        if (!api_key_.empty()) {
            headers.emplace("Authorization", "Bearer " + api_key_);
        }
        auto res = client.Post(endpoint_.path, headers, payload, "application/json");
        if (!res) {
            error = "network error: " + httplib::to_string(res.error());
            retryable = true;
            return nullptr;
        }
        if (res->status == 429 || res->status >= 500) {
            error = "HTTP " + std::to_string(res->status) + ": " + res->body;
            retryable = true;
            return nullptr;
        }
        if (res->status != 200) {
            error = "HTTP " + std::to_string(res->status) + ": " + res->body;
            retryable = false;
            return nullptr;
        }
        json reply = json::parse(res->body, nullptr, false);
        if (reply.is_discarded()) {
            error = "response body is not valid JSON";
            retryable = false;
            return nullptr;
        }
        auto out = std::make_unique<BackendReply>();
        try {
            out->text = reply.at("choices").at(0).at("message").at("content").get<std::string>();
        } catch (const std::exception& e) {
            error = std::string("unexpected response shape: ") + e.what();
            retryable = false;
            return nullptr;
        }
        if (reply.contains("usage")) {
            out->prompt_tokens = reply["usage"].value("prompt_tokens", 0LL);
            out->completion_tokens = reply["usage"].value("completion_tokens", 0LL);
        } else {
            out->prompt_tokens = approx_tokens(payload.size());
            out->completion_tokens = approx_tokens(out->text.size());
        }
        return out;
    }
};

} // namespace

std::shared_ptr<Backend> make_live_backend(const BackendConfig& config) {
    return std::make_shared<LiveBackend>(config);
}

} // namespace lfs
