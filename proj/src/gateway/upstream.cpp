#include "litgate/gateway/upstream.hpp"

#include <json.hpp>

namespace litgate {

using json = nlohmann::json;

UpstreamError::UpstreamError(int status, std::string body_excerpt, bool retriable, bool timed_out)
    : std::runtime_error(timed_out ? std::string("upstream timed out")
                                   : "upstream error (status " + std::to_string(status) + ")"),
      status_(status),
      body_excerpt_(std::move(body_excerpt)),
      retriable_(retriable),
      timed_out_(timed_out) {}

UpstreamClient::UpstreamClient(UpstreamSettings settings, std::shared_ptr<HttpTransport> transport)
    : settings_(std::move(settings)), transport_(std::move(transport)) {}

std::string UpstreamClient::request_body(const std::string& model,
                                         const std::vector<ChatMessage>& messages) {
    json body;
    body["model"] = model;
    body["messages"] = json::array();
    for (const auto& m : messages)
        body["messages"].push_back({{"role", m.role}, {"content", m.content}});
    return body.dump();
}

namespace {

std::string excerpt(const std::string& body) {
    constexpr std::size_t kMax = 200;
    return body.size() <= kMax ? body : body.substr(0, kMax) + "...";
}

}  // namespace

std::string UpstreamClient::parse_reply(int status, const std::string& body) {
    if (status < 200 || status >= 300)
        throw UpstreamError(status, excerpt(body), status >= 500 || status == 429, false);
    const auto doc = json::parse(body, nullptr, false);
    if (doc.is_discarded() || !doc.is_object()) throw UpstreamError(status, excerpt(body), false, false);
    const auto choices = doc.find("choices");
    if (choices == doc.end() || !choices->is_array() || choices->empty())
        throw UpstreamError(status, excerpt(body), false, false);
    const auto& first = (*choices)[0];
    if (!first.contains("message") || !first["message"].contains("content") ||
        !first["message"]["content"].is_string())
        throw UpstreamError(status, excerpt(body), false, false);
    return first["message"]["content"].get<std::string>();
}

std::string UpstreamClient::complete(const std::vector<ChatMessage>& messages) const {
    HttpRequest req;
    req.url = settings_.endpoint;
    req.body = request_body(settings_.model, messages);
    req.headers.emplace_back("Content-Type", "application/json");
    if (settings_.api_key && !settings_.api_key->empty())
        req.headers.emplace_back("Authorization", "Bearer " + *settings_.api_key);
    req.timeout = std::chrono::seconds(settings_.timeout_seconds);
    HttpResponse resp;
    try {
        resp = transport_->post(req);
    } catch (const TransportError& e) {
        throw UpstreamError(0, e.what(), true, e.timed_out());
    }
    return parse_reply(resp.status, resp.body);
}

std::string forward_upstream(const std::string& text, const std::vector<ChatMessage>& history,
                             const UpstreamClient& client) {
    auto messages = history;
    messages.push_back({"user", text});
    return client.complete(messages);
}

}  // namespace litgate
