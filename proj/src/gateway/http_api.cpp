#include "litgate/gateway/http_api.hpp"

#include <httplib.h>

#include "litgate/gateway/json_io.hpp"

namespace litgate {

namespace {

using json_io::json;

void send_json(httplib::Response& res, int status, const json& body) {
    res.status = status;
    res.set_content(body.dump(), "application/json");
}

void send_bad_request(httplib::Response& res, const std::string& message) {
    send_json(res, 400, {{"error", "BadRequest"}, {"message", message}});
}

// Parses the body as a JSON object or answers 400.
std::optional<json> parse_body(const httplib::Request& req, httplib::Response& res) {
    auto body = json::parse(req.body, nullptr, false);
    if (body.is_discarded() || !body.is_object()) {
        send_bad_request(res, "body must be a JSON object");
        return std::nullopt;
    }
    return body;
}

std::optional<std::string> string_field(const json& body, const char* name,
                                        httplib::Response& res) {
    auto it = body.find(name);
    if (it == body.end() || !it->is_string()) {
        send_bad_request(res, std::string("missing string field '") + name + "'");
        return std::nullopt;
    }
    return it->get<std::string>();
}

template <typename F>
void guarded(httplib::Response& res, F&& f) {
    try {
        f();
    } catch (const GatewayError& e) {
        send_json(res, e.http_status(), json_io::to_json(e));
    }
}

}  // namespace

HttpApi::HttpApi(std::shared_ptr<LiteracyGateway> gateway, ServerOptions options)
    : gateway_(std::move(gateway)),
      options_(std::move(options)),
      server_(std::make_unique<httplib::Server>()) {
    install_routes();
}

HttpApi::~HttpApi() = default;

void HttpApi::install_routes() {
    auto& srv = *server_;

    srv.Post("/v1/chat", [this](const httplib::Request& req, httplib::Response& res) {
        auto body = parse_body(req, res);
        if (!body) return;
        auto session = string_field(*body, "session_id", res);
        if (!session) return;
        auto text = string_field(*body, "text", res);
        if (!text) return;
        guarded(res, [&] {
            send_json(res, 200, json_io::to_json(gateway_->handle_turn(*session, *text)));
        });
    });

    srv.Post("/v1/decision", [this](const httplib::Request& req, httplib::Response& res) {
        auto body = parse_body(req, res);
        if (!body) return;
        auto session = string_field(*body, "session_id", res);
        if (!session) return;
        auto pending = string_field(*body, "pending_id", res);
        if (!pending) return;
        auto action = string_field(*body, "action", res);
        if (!action) return;
        Decision decision;
        if (*action == "continue") {
            decision = Decision::continue_original();
        } else if (*action == "rephrase") {
            auto text = string_field(*body, "text", res);
            if (!text) return;
            decision = Decision::rephrase(*text);
        } else {
            send_bad_request(res, "action must be \"continue\" or \"rephrase\"");
            return;
        }
        guarded(res, [&] {
            send_json(res, 200,
                      json_io::to_json(gateway_->resolve_pending(*session, *pending, decision)));
        });
    });

    srv.Get(R"(/v1/metrics/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
        const std::string session = req.matches[1];
        guarded(res, [&] {
            send_json(res, 200, json_io::to_json(gateway_->export_metrics(session)));
        });
    });

    srv.Get("/v1/transparency", [this](const httplib::Request&, httplib::Response& res) {
        json body = {{"notes", json_io::to_json(gateway_->transparency_page())}};
        send_json(res, 200, body);
    });

    if (options_.ui_dir) {
        srv.set_mount_point("/ui", options_.ui_dir->string());
        srv.Get("/", [](const httplib::Request&, httplib::Response& res) {
            res.set_redirect("/ui/index.html");
        });
    }

    srv.set_exception_handler(
        [](const httplib::Request&, httplib::Response& res, std::exception_ptr ep) {
            std::string message = "internal error";
            try {
                std::rethrow_exception(ep);
            } catch (const std::exception& e) {
                message = e.what();
            } catch (...) {
            }
            send_json(res, 500, {{"error", "Internal"}, {"message", message}});
        });
}

bool HttpApi::listen() { return server_->listen(options_.host, options_.port); }

int HttpApi::bind_any_port() { return server_->bind_to_any_port(options_.host); }

bool HttpApi::listen_after_bind() { return server_->listen_after_bind(); }

void HttpApi::stop() { server_->stop(); }

void HttpApi::wait_until_ready() const { server_->wait_until_ready(); }

}  // namespace litgate
