#pragma once

#include <filesystem>
#include <mutex>
#include <optional>
#include <string>

#include "litgate/gateway/session.hpp"

namespace litgate {

// Append-only JSONL file of per-session skill profiles and tallies. Never holds message text.
class MetricsAppender {
public:
    explicit MetricsAppender(std::filesystem::path path) : path_(std::move(path)) {}

    void append(const std::string& session_id, std::uint64_t turn_index, const SkillProfile& skill,
                const MetricsTallies& tallies);

    const std::filesystem::path& path() const noexcept { return path_; }

private:
    std::filesystem::path path_;
    std::mutex mutex_;
};

// Latest record for the session, or nullopt when the file has none.
std::optional<SessionMetrics> read_latest_metrics(const std::filesystem::path& path,
                                                  const std::string& session_id);

}  // namespace litgate
