#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "litgate/core/types.hpp"

namespace litgate {

struct UpstreamSettings {
    std::string endpoint = "http://127.0.0.1:8081/v1/chat/completions";
    std::optional<std::string> api_key;
    std::string model = "local-model";
    int timeout_seconds = 30;

    bool operator==(const UpstreamSettings&) const = default;
};

struct LexiconPaths {
    std::filesystem::path rules;
    std::filesystem::path goal_markers;
    std::filesystem::path specificity_markers;
    std::filesystem::path hedge_words;
    std::filesystem::path privacy_questions;
    std::filesystem::path system_questions;

    bool operator==(const LexiconPaths&) const = default;
};

struct RubricSettings {
    int too_short_max_words = 3;
    int too_long_min_words = 120;
    // Hints are shown when the clarity score is below this value.
    int clarity_hint_threshold = 4;
    double ema_weight = 0.3;
    double moderate_threshold = 2.5;
    double subtle_threshold = 3.75;

    bool operator==(const RubricSettings&) const = default;
};

struct LimitSettings {
    int cooldown_turns = 5;
    int pending_ttl_seconds = 30 * 60;
    bool block_high_risk_forwarding = true;

    bool operator==(const LimitSettings&) const = default;
};

// Keys of the [transparency] section.
inline constexpr std::string_view kTemplateDataCollected = "data_collected";
inline constexpr std::string_view kTemplateDataUse = "data_use";
inline constexpr std::string_view kTemplateDataNotStored = "data_not_stored";
inline constexpr std::string_view kTemplateSystemBehavior = "system_behavior";

struct GatewayConfig {
    UpstreamSettings upstream;
    std::vector<ReferralLink> referral_registry;
    std::vector<std::string> topic_menu;
    std::map<std::string, std::vector<std::string>> topic_keywords;
    RubricSettings rubric;
    // "<level>.<feature>" -> template overriding the built-in hint text.
    std::map<std::string, std::string> hint_overrides;
    std::map<std::string, std::string> transparency_templates;
    LimitSettings limits;
    LexiconPaths lexicons;
    std::filesystem::path metrics_path;

    bool operator==(const GatewayConfig&) const = default;
};

// Directory holding the bundled lexicons and gold corpora.
std::filesystem::path bundled_data_dir();

// Every field at its documented default; relative defaults resolve against base_dir.
GatewayConfig default_config(const std::filesystem::path& base_dir = {});

// Throws ConfigError: MissingFile, ParseError (line/column), ValidationError (field).
GatewayConfig load_config(const std::filesystem::path& path);
GatewayConfig parse_config(std::string_view source, const std::filesystem::path& base_dir);

// Checks all invariants; throws ConfigError(ValidationError) naming the first violation.
void validate(const GatewayConfig& config);

// Serializes every field explicitly, so parse_config(write_config(c)) == c.
std::string write_config(const GatewayConfig& config);

}  // namespace litgate
