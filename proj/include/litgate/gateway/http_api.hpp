#pragma once

#include <filesystem>
#include <memory>
#include <optional>
#include <string>

#include "litgate/gateway/gateway.hpp"

namespace httplib {
class Server;
}

namespace litgate {

struct ServerOptions {
    std::string host = "127.0.0.1";
    int port = 8787;
    // Directory served under /ui when set.
    std::optional<std::filesystem::path> ui_dir;
};

// Local HTTP front of a LiteracyGateway: /v1/chat, /v1/decision, /v1/metrics/{id},
// /v1/transparency, plus static files under /ui.
class HttpApi {
public:
    HttpApi(std::shared_ptr<LiteracyGateway> gateway, ServerOptions options = {});
    ~HttpApi();

    HttpApi(const HttpApi&) = delete;
    HttpApi& operator=(const HttpApi&) = delete;

    // Blocks until stop(). Returns false when the socket could not be bound.
    bool listen();
    // Binds an ephemeral port and returns it, or -1. Call listen_after_bind() to serve.
    int bind_any_port();
    bool listen_after_bind();
    void stop();
    void wait_until_ready() const;

private:
    void install_routes();

    std::shared_ptr<LiteracyGateway> gateway_;
    ServerOptions options_;
    std::unique_ptr<httplib::Server> server_;
};

}  // namespace litgate
