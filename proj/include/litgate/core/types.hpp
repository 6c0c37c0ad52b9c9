#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace litgate {

// One inbound user message.
struct UserTurn {
    std::string session_id;
    std::uint64_t turn_index = 0;
    std::string text;
    std::int64_t received_at_ms = 0;

    bool operator==(const UserTurn&) const = default;
};

// Disclosure taxonomy. Declaration order is the severity order.
enum class DisclosureLabel : std::uint8_t { Safe = 0, Personal = 1, HighRisk = 2 };

inline constexpr std::array<DisclosureLabel, 3> kAllLabels = {
    DisclosureLabel::Safe, DisclosureLabel::Personal, DisclosureLabel::HighRisk};

constexpr DisclosureLabel severity_max(DisclosureLabel a, DisclosureLabel b) noexcept {
    return static_cast<std::uint8_t>(a) >= static_cast<std::uint8_t>(b) ? a : b;
}

std::string_view to_string(DisclosureLabel label) noexcept;
// Accepts "safe", "personal", "high_risk" (also "high-risk", "highrisk").
std::optional<DisclosureLabel> parse_label(std::string_view text) noexcept;

enum class SpanCategory : std::uint8_t {
    PersonName,
    Location,
    ContactInfo,
    DateOfEvent,
    Identifier,
    LifeEventDetail,
    CrisisIndicator,
};

inline constexpr std::array<SpanCategory, 7> kAllCategories = {
    SpanCategory::PersonName,  SpanCategory::Location,        SpanCategory::ContactInfo,
    SpanCategory::DateOfEvent, SpanCategory::Identifier,      SpanCategory::LifeEventDetail,
    SpanCategory::CrisisIndicator};

std::string_view to_string(SpanCategory category) noexcept;
std::optional<SpanCategory> parse_category(std::string_view text) noexcept;
// Redaction placeholder, e.g. "[NAME]".
std::string_view placeholder(SpanCategory category) noexcept;
// Label a single span implies on its own.
DisclosureLabel implied_label(SpanCategory category) noexcept;

// Byte range [start, end) into the message text, on codepoint boundaries.
struct SensitiveSpan {
    std::size_t start = 0;
    std::size_t end = 0;
    SpanCategory category = SpanCategory::PersonName;
    std::string matched_text;
    std::string rule_id;

    std::size_t length() const noexcept { return end - start; }
    bool overlaps(const SensitiveSpan& other) const noexcept {
        return start < other.end && other.start < end;
    }
    bool operator==(const SensitiveSpan&) const = default;
};

struct DisclosureReport {
    DisclosureLabel label = DisclosureLabel::Safe;
    std::vector<SensitiveSpan> spans;
    std::string rationale;
    std::string redacted_text;
    // Rule ids that contributed spans, sorted and unique.
    std::vector<std::string> fired_rules;

    bool operator==(const DisclosureReport&) const = default;
};

enum class LengthBand : std::uint8_t { TooShort, Ok, TooLong };
std::string_view to_string(LengthBand band) noexcept;

struct ClarityFeatures {
    bool has_topic = false;
    bool has_goal = false;
    int specificity_hits = 0;
    LengthBand length_band = LengthBand::Ok;
    int ambiguity_flags = 0;

    bool operator==(const ClarityFeatures&) const = default;
};

struct ClarityAssessment {
    int score = 1;
    ClarityFeatures features;
    std::vector<std::string> hints;
    std::vector<std::string> rephrase_options;
    // Menu topics whose keywords appeared in the text, in menu order.
    std::vector<std::string> topics_detected;
    // The user's own words that matched topic keywords, in text order.
    std::vector<std::string> topic_terms;

    bool operator==(const ClarityAssessment&) const = default;
};

enum class GuidanceLevel : std::uint8_t { Structured = 0, Moderate = 1, Subtle = 2 };
std::string_view to_string(GuidanceLevel level) noexcept;

struct SkillProfile {
    double rolling_clarity = 1.0;
    std::uint64_t turns_observed = 0;
    GuidanceLevel guidance_level = GuidanceLevel::Structured;

    bool operator==(const SkillProfile&) const = default;
};

enum class InterventionKind : std::uint8_t {
    PromptHint,
    DisclosureReflection,
    TransparencyNote,
    CrisisReferral,
};

inline constexpr std::array<InterventionKind, 4> kAllInterventionKinds = {
    InterventionKind::PromptHint, InterventionKind::DisclosureReflection,
    InterventionKind::TransparencyNote, InterventionKind::CrisisReferral};

std::string_view to_string(InterventionKind kind) noexcept;
constexpr bool is_blocking_kind(InterventionKind kind) noexcept {
    return kind == InterventionKind::DisclosureReflection ||
           kind == InterventionKind::CrisisReferral;
}

enum class OptionAction : std::uint8_t { Continue, RephraseWith, FreeRephrase };
std::string_view to_string(OptionAction action) noexcept;

struct InterventionOption {
    std::string label;
    OptionAction action = OptionAction::Continue;
    std::string text;  // only for RephraseWith

    bool operator==(const InterventionOption&) const = default;
};

struct ReferralLink {
    std::string name;
    std::string url;
    std::string region;

    bool operator==(const ReferralLink&) const = default;
};

struct Intervention {
    InterventionKind kind = InterventionKind::PromptHint;
    std::string message;
    std::vector<InterventionOption> options;
    bool blocking = false;
    std::vector<ReferralLink> referral_links;

    bool operator==(const Intervention&) const = default;
};

// Per-kind counters indexed by InterventionKind.
using InterventionCounts = std::array<std::uint64_t, 4>;

}  // namespace litgate
