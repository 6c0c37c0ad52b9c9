#pragma once

#include <atomic>
#include <filesystem>
#include <functional>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "litgate/core/config.hpp"
#include "litgate/gateway/gateway.hpp"
#include "litgate/gateway/upstream.hpp"

namespace litgate::testing {

inline const std::string kUpstreamUrl = "http://127.0.0.1:9/v1/chat/completions";

// Bundled lexicons, one referral entry, and a mock-only upstream URL.
inline GatewayConfig test_config() {
    auto c = default_config(std::filesystem::temp_directory_path());
    c.upstream.endpoint = kUpstreamUrl;
    c.referral_registry = {{"Test Crisis Line", "https://crisis.example.org", "CA"}};
    return c;
}

inline std::shared_ptr<const LiteracyEngines> test_engines(const GatewayConfig& c = test_config()) {
    return LiteracyEngines::load(c);
}

// Every request made through any RecordingTransport in this process.
struct OutboundLog {
    std::mutex mutex;
    std::vector<std::string> urls;

    static OutboundLog& instance() {
        static OutboundLog log;
        return log;
    }
    void add(const std::string& url) {
        std::lock_guard lock(mutex);
        urls.push_back(url);
    }
    std::vector<std::string> snapshot() {
        std::lock_guard lock(mutex);
        return urls;
    }
};

// Mock upstream. Records each request; by default echoes the last user message.
class RecordingTransport final : public HttpTransport {
public:
    using Responder = std::function<HttpResponse(const HttpRequest&)>;

    RecordingTransport() = default;
    explicit RecordingTransport(Responder responder) : responder_(std::move(responder)) {}

    HttpResponse post(const HttpRequest& request) override {
        OutboundLog::instance().add(request.url);
        {
            std::lock_guard lock(mutex_);
            requests_.push_back(request);
        }
        if (responder_) return responder_(request);
        return echo(request);
    }

    static HttpResponse echo(const HttpRequest& request) {
        const auto body = nlohmann::json::parse(request.body);
        const auto& last = body.at("messages").back();
        nlohmann::json reply = {
            {"choices", {{{"message", {{"role", "assistant"}, {"content", "echo: " + last.at("content").get<std::string>()}}}}}}};
        return {200, reply.dump()};
    }

    void set_responder(Responder r) {
        std::lock_guard lock(mutex_);
        responder_ = std::move(r);
    }
    std::vector<HttpRequest> requests() const {
        std::lock_guard lock(mutex_);
        return requests_;
    }
    std::size_t count() const {
        std::lock_guard lock(mutex_);
        return requests_.size();
    }
    // The "messages" array of request i.
    nlohmann::json messages(std::size_t i) const {
        std::lock_guard lock(mutex_);
        return nlohmann::json::parse(requests_.at(i).body).at("messages");
    }

private:
    mutable std::mutex mutex_;
    std::vector<HttpRequest> requests_;
    Responder responder_;
};

// Deterministic pending ids: p1, p2, ...
inline std::function<std::string()> counter_ids() {
    auto n = std::make_shared<std::atomic<int>>(0);
    return [n] { return "p" + std::to_string(++*n); };
}

struct ScratchDir {
    std::filesystem::path path;
    ScratchDir() {
        std::random_device rd;
        path = std::filesystem::temp_directory_path() /
               ("litgate-test-" + std::to_string(rd()) + std::to_string(rd()));
        std::filesystem::create_directories(path);
    }
    ~ScratchDir() {
        std::error_code ec;
        std::filesystem::remove_all(path, ec);
    }
    ScratchDir(const ScratchDir&) = delete;
    ScratchDir& operator=(const ScratchDir&) = delete;
};

}  // namespace litgate::testing
