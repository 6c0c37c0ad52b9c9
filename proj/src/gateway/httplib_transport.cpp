#include <httplib.h>

#include "litgate/gateway/upstream.hpp"

namespace litgate {

namespace {

struct SplitUrl {
    std::string origin;  // scheme://host[:port]
    std::string path;
};

SplitUrl split_url(const std::string& url) {
    const auto scheme_end = url.find("://");
    if (scheme_end == std::string::npos) throw TransportError("malformed url: " + url, false);
    const auto path_start = url.find('/', scheme_end + 3);
    if (path_start == std::string::npos) return {url, "/"};
    return {url.substr(0, path_start), url.substr(path_start)};
}

}  // namespace

HttpResponse HttplibTransport::post(const HttpRequest& request) {
    const auto [origin, path] = split_url(request.url);
    httplib::Client client(origin);
    const auto secs = std::chrono::duration_cast<std::chrono::seconds>(request.timeout);
    client.set_connection_timeout(secs);
    client.set_read_timeout(secs);
    client.set_write_timeout(secs);

    httplib::Headers headers;
    std::string content_type = "application/json";
    for (const auto& [k, v] : request.headers) {
        if (k == "Content-Type") content_type = v;
        else headers.emplace(k, v);
    }
    auto res = client.Post(path, headers, request.body, content_type);
    if (!res) {
        const auto err = res.error();
        const bool timed_out = err == httplib::Error::ConnectionTimeout || err == httplib::Error::Read;
        throw TransportError("upstream request failed: " + httplib::to_string(err), timed_out);
    }
    return HttpResponse{res->status, res->body};
}

}  // namespace litgate
