#include <doctest.h>

#include <httplib.h>

#include <fstream>
#include <thread>

#include "../support/fixtures.hpp"
#include "litgate/gateway/http_api.hpp"

using namespace litgate;
using litgate::testing::RecordingTransport;
using nlohmann::json;

namespace {

struct Server {
    std::shared_ptr<RecordingTransport> upstream = std::make_shared<RecordingTransport>();
    std::unique_ptr<HttpApi> api;
    std::thread thread;
    int port = -1;

    explicit Server(std::optional<std::filesystem::path> ui = std::nullopt) {
        GatewayOptions options;
        options.id_generator = litgate::testing::counter_ids();
        auto gateway = std::make_shared<LiteracyGateway>(litgate::testing::test_engines(), upstream,
                                                         nullptr, options);
        ServerOptions so;
        so.ui_dir = std::move(ui);
        api = std::make_unique<HttpApi>(gateway, so);
        port = api->bind_any_port();
        REQUIRE(port > 0);
        thread = std::thread([this] { api->listen_after_bind(); });
        api->wait_until_ready();
    }
    ~Server() {
        api->stop();
        thread.join();
    }

    httplib::Client client() const { return httplib::Client("127.0.0.1", port); }

    std::pair<int, json> post(const std::string& path, const json& body) const {
        auto res = client().Post(path, body.dump(), "application/json");
        REQUIRE(res);
        return {res->status, json::parse(res->body)};
    }
    std::pair<int, json> get(const std::string& path) const {
        auto res = client().Get(path);
        REQUIRE(res);
        return {res->status, json::parse(res->body)};
    }
};

}  // namespace

TEST_SUITE("http") {
    TEST_CASE("chat and decision round trip") {
        Server s;
        auto [st1, fwd] = s.post("/v1/chat", {{"session_id", "a"}, {"text", "I felt anxious today."}});
        CHECK(st1 == 200);
        CHECK(fwd["outcome"] == "forwarded");
        CHECK(fwd["assistant_text"] == "echo: I felt anxious today.");
        CHECK(fwd["interventions"].is_array());

        auto [st2, held] = s.post("/v1/chat", {{"session_id", "a"}, {"text", "My friend Sarah…"}});
        CHECK(st2 == 200);
        CHECK(held["outcome"] == "held");
        CHECK(held["pending_id"] == "p1");
        CHECK(held["interventions"][0]["kind"] == "disclosure_reflection");
        CHECK(held["interventions"][0]["options"][1]["text"] == "My friend [NAME]…");

        auto [st3, busy] = s.post("/v1/chat", {{"session_id", "a"}, {"text", "hello there friend"}});
        CHECK(st3 == 409);
        CHECK(busy["error"] == "SessionBusy");

        auto [st4, done] = s.post("/v1/decision", {{"session_id", "a"},
                                                   {"pending_id", "p1"},
                                                   {"action", "rephrase"},
                                                   {"text", "My friend [NAME]…"}});
        CHECK(st4 == 200);
        CHECK(done["outcome"] == "forwarded");

        auto [st5, none] = s.post("/v1/decision", {{"session_id", "a"}, {"pending_id", "p1"}, {"action", "continue"}});
        CHECK(st5 == 404);
        CHECK(none["error"] == "NoPending");

        auto [st6, metrics] = s.get("/v1/metrics/a");
        CHECK(st6 == 200);
        CHECK(metrics["rephrase_accepted"] == 1);
        CHECK(metrics["classified_turns"] == 2);
        CHECK(metrics.dump().find("Sarah") == std::string::npos);
    }

    TEST_CASE("error statuses") {
        Server s;
        CHECK(s.post("/v1/chat", {{"session_id", "a"}, {"text", "  "}}).first == 422);
        CHECK(s.get("/v1/metrics/unknown").first == 404);

        auto [st, held] = s.post("/v1/chat", {{"session_id", "c"}, {"text", "I want to kill myself."}});
        CHECK(held["outcome"] == "held");
        auto [st2, forbidden] = s.post("/v1/decision", {{"session_id", "c"}, {"pending_id", held["pending_id"]}, {"action", "continue"}});
        CHECK(st2 == 403);
        CHECK(forbidden["error"] == "ContinueForbidden");
        CHECK(s.post("/v1/decision", {{"session_id", "c"}, {"pending_id", "zzz"}, {"action", "continue"}}).first == 409);
        CHECK(s.post("/v1/decision", {{"session_id", "c"}, {"pending_id", "p1"}, {"action", "maybe"}}).first == 400);
        CHECK(s.post("/v1/chat", {{"session_id", "c"}}).first == 400);

        auto res = s.client().Post("/v1/chat", "{not json", "application/json");
        REQUIRE(res);
        CHECK(res->status == 400);

        s.upstream->set_responder([](const HttpRequest&) { return HttpResponse{500, "down"}; });
        auto [st3, err] = s.post("/v1/chat", {{"session_id", "d"}, {"text", "I felt anxious today."}});
        CHECK(st3 == 502);
        CHECK(err["error"] == "UpstreamError");
        CHECK(err["status"] == 500);
        CHECK(err["retriable"] == true);
    }

    TEST_CASE("transparency page lists every template") {
        Server s;
        auto [st, page] = s.get("/v1/transparency");
        CHECK(st == 200);
        REQUIRE(page["notes"].size() == 4);
        for (const auto& n : page["notes"]) {
            CHECK(n["kind"] == "transparency_note");
            CHECK(n["blocking"] == false);
        }
    }

    TEST_CASE("static ui files are served under /ui") {
        litgate::testing::ScratchDir dir;
        std::ofstream(dir.path / "index.html") << "<p>hi</p>";
        Server s(dir.path);
        auto res = s.client().Get("/ui/index.html");
        REQUIRE(res);
        CHECK(res->status == 200);
        CHECK(res->body == "<p>hi</p>");
    }

    TEST_CASE("bundled ui is present") {
        CHECK(std::filesystem::exists(bundled_data_dir() / "ui/index.html"));
        CHECK(std::filesystem::exists(bundled_data_dir() / "ui/app.js"));
    }
}
