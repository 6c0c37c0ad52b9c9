#include <CLI11.hpp>
#include <json.hpp>

#include <csignal>
#include <fstream>
#include <iostream>
#include <sstream>

#include "litgate/core/config.hpp"
#include "litgate/core/error.hpp"
#include "litgate/disclosure/monitor.hpp"
#include "litgate/eval/harness.hpp"
#include "litgate/gateway/http_api.hpp"
#include "litgate/gateway/json_io.hpp"
#include "litgate/gateway/metrics_store.hpp"

namespace {

litgate::GatewayConfig config_from(const std::string& path) {
    return litgate::load_config(path.empty() ? litgate::bundled_data_dir() / "litgate.toml"
                                             : std::filesystem::path(path));
}

litgate::HttpApi* g_api = nullptr;

void on_signal(int) {
    if (g_api) g_api->stop();
}

int run_serve(const std::string& config_path, const std::string& host, int port,
              const std::string& ui_dir, const std::string& metrics_path) {
    auto config = config_from(config_path);
    if (!metrics_path.empty()) config.metrics_path = metrics_path;
    auto engines = litgate::LiteracyEngines::load(config);
    auto metrics = std::make_shared<litgate::MetricsAppender>(config.metrics_path);
    auto gateway = std::make_shared<litgate::LiteracyGateway>(
        engines, std::make_shared<litgate::HttplibTransport>(), metrics);

    litgate::ServerOptions options;
    options.host = host;
    options.port = port;
    std::filesystem::path ui = ui_dir.empty() ? litgate::bundled_data_dir() / "ui" : std::filesystem::path(ui_dir);
    if (std::filesystem::is_directory(ui)) options.ui_dir = ui;

    litgate::HttpApi api(gateway, options);
    g_api = &api;
    std::signal(SIGINT, on_signal);
    std::signal(SIGTERM, on_signal);
    std::cerr << "litgate listening on http://" << host << ":" << port
              << (options.ui_dir ? " (ui at /ui/)" : "") << "\n";
    if (!api.listen()) {
        std::cerr << "error: cannot bind " << host << ":" << port << "\n";
        return 1;
    }
    return 0;
}

int run_redact(const std::string& config_path, const std::string& rules_path) {
    const auto monitor = rules_path.empty()
                             ? litgate::disclosure::DisclosureMonitor::from_config(config_from(config_path))
                             : litgate::disclosure::DisclosureMonitor::from_rule_file(rules_path);
    std::string line;
    while (std::getline(std::cin, line)) {
        if (line.empty()) continue;
        std::cout << litgate::json_io::to_json(monitor.build_report(line)).dump() << "\n";
    }
    return 0;
}

int run_analyze(const std::string& config_path, const std::string& transcript,
                const std::string& out, const std::string& format) {
    const auto engines = litgate::LiteracyEngines::load(config_from(config_path));
    const auto turns = litgate::eval::load_transcript(transcript);
    const auto report = litgate::eval::compute_metrics(litgate::eval::annotate(turns, *engines));
    const auto text = format == "markdown" ? litgate::eval::report_markdown(report)
                                           : litgate::eval::report_json(report);
    if (out.empty() || out == "-") {
        std::cout << text;
    } else {
        std::ofstream file(out, std::ios::binary);
        if (!file) throw std::runtime_error("cannot write '" + out + "'");
        file << text;
    }
    return 0;
}

int run_metrics(const std::string& config_path, const std::string& file,
                const std::string& session) {
    const std::filesystem::path path = file.empty() ? config_from(config_path).metrics_path : std::filesystem::path(file);
    const auto metrics = litgate::read_latest_metrics(path, session);
    if (!metrics) {
        std::cerr << "no metrics for session '" << session << "' in " << path << "\n";
        return 1;
    }
    std::cout << litgate::json_io::to_json(*metrics).dump(2) << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"litgate: local literacy gateway for LLM chat"};
    app.require_subcommand(1);

    std::string config_path;
    app.add_option("-c,--config", config_path, "gateway config (TOML); the bundled data/litgate.toml if omitted");

    auto* serve = app.add_subcommand("serve", "run the local HTTP gateway");
    std::string host = "127.0.0.1";
    int port = 8787;
    std::string ui_dir;
    serve->add_option("--host", host, "bind address")->capture_default_str();
    serve->add_option("-p,--port", port, "listen port")->capture_default_str()->check(CLI::Range(1, 65535));
    serve->add_option("--ui", ui_dir, "static directory served under /ui");
    std::string metrics_path;
    serve->add_option("--metrics", metrics_path, "metrics JSONL file; overrides the config");

    auto* redact = app.add_subcommand("redact", "report and redact each stdin line as JSONL");
    std::string rules_path;
    redact->add_option("--rules", rules_path, "rule file; overrides the config's rules");

    auto* analyze = app.add_subcommand("analyze", "compute transcript metrics");
    std::string transcript, out, format = "json";
    analyze->add_option("-t,--transcript", transcript, "transcript JSONL")->required();
    analyze->add_option("-o,--out", out, "output file (stdout if omitted)");
    analyze->add_option("-f,--format", format, "json or markdown")
        ->check(CLI::IsMember({"json", "markdown"}))
        ->capture_default_str();

    auto* metrics = app.add_subcommand("metrics", "print the latest stored metrics for a session");
    std::string session, metrics_file;
    metrics->add_option("-s,--session", session, "session id")->required();
    metrics->add_option("--file", metrics_file, "metrics JSONL; defaults to the config's path");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*serve) return run_serve(config_path, host, port, ui_dir, metrics_path);
        if (*redact) return run_redact(config_path, rules_path);
        if (*analyze) return run_analyze(config_path, transcript, out, format);
        if (*metrics) return run_metrics(config_path, metrics_file, session);
    } catch (const litgate::ConfigError& e) {
        std::cerr << "config error (" << litgate::to_string(e.kind()) << "): " << e.what() << "\n";
        return 2;
    } catch (const litgate::eval::TranscriptError& e) {
        std::cerr << "transcript error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
