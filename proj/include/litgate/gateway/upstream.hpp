#pragma once

#include <chrono>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "litgate/core/config.hpp"

namespace litgate {

struct HttpRequest {
    std::string url;
    std::string body;
    std::vector<std::pair<std::string, std::string>> headers;
    std::chrono::milliseconds timeout{30000};
};

struct HttpResponse {
    int status = 0;
    std::string body;
};

// Connection-level failure: nothing usable came back.
class TransportError : public std::runtime_error {
public:
    TransportError(const std::string& what, bool timed_out)
        : std::runtime_error(what), timed_out_(timed_out) {}
    bool timed_out() const noexcept { return timed_out_; }

private:
    bool timed_out_;
};

// Every outbound request the gateway makes goes through one of these.
class HttpTransport {
public:
    virtual ~HttpTransport() = default;
    virtual HttpResponse post(const HttpRequest& request) = 0;
};

class HttplibTransport final : public HttpTransport {
public:
    HttpResponse post(const HttpRequest& request) override;
};

struct ChatMessage {
    std::string role;
    std::string content;

    bool operator==(const ChatMessage&) const = default;
};

class UpstreamError : public std::runtime_error {
public:
    UpstreamError(int status, std::string body_excerpt, bool retriable, bool timed_out);

    // HTTP status from the upstream, 0 when the request never completed.
    int status() const noexcept { return status_; }
    const std::string& body_excerpt() const noexcept { return body_excerpt_; }
    bool retriable() const noexcept { return retriable_; }
    bool timed_out() const noexcept { return timed_out_; }

private:
    int status_;
    std::string body_excerpt_;
    bool retriable_;
    bool timed_out_;
};

// Chat-completion client: {model, messages} -> choices[0].message.content.
class UpstreamClient {
public:
    UpstreamClient(UpstreamSettings settings, std::shared_ptr<HttpTransport> transport);

    // Exactly one POST to the configured endpoint. Throws UpstreamError.
    std::string complete(const std::vector<ChatMessage>& messages) const;

    static std::string request_body(const std::string& model,
                                    const std::vector<ChatMessage>& messages);
    // Throws UpstreamError when the body is not a chat-completion response.
    static std::string parse_reply(int status, const std::string& body);

    const UpstreamSettings& settings() const noexcept { return settings_; }

private:
    UpstreamSettings settings_;
    std::shared_ptr<HttpTransport> transport_;
};

// Sends history plus the confirmed text and returns the assistant reply.
std::string forward_upstream(const std::string& text, const std::vector<ChatMessage>& history,
                             const UpstreamClient& client);

}  // namespace litgate
