#include "litgate/core/types.hpp"

#include "litgate/core/error.hpp"

namespace litgate {

ConfigError::ConfigError(Kind kind, std::string message, std::string field, std::size_t line,
                         std::size_t column)
    : std::runtime_error(std::move(message)),
      kind_(kind),
      field_(std::move(field)),
      line_(line),
      column_(column) {}

ConfigError ConfigError::missing_file(const std::string& path) {
    return ConfigError(Kind::MissingFile, "file not found: " + path, path);
}

ConfigError ConfigError::parse(const std::string& what, std::size_t line, std::size_t column) {
    return ConfigError(Kind::ParseError,
                       "parse error at line " + std::to_string(line) + ", column " +
                           std::to_string(column) + ": " + what,
                       {}, line, column);
}

ConfigError ConfigError::validation(const std::string& field, const std::string& what) {
    return ConfigError(Kind::ValidationError, "invalid " + field + ": " + what, field);
}

const char* to_string(ConfigError::Kind kind) noexcept {
    switch (kind) {
        case ConfigError::Kind::MissingFile: return "MissingFile";
        case ConfigError::Kind::ParseError: return "ParseError";
        case ConfigError::Kind::ValidationError: return "ValidationError";
    }
    return "?";
}

std::string_view to_string(DisclosureLabel label) noexcept {
    switch (label) {
        case DisclosureLabel::Safe: return "safe";
        case DisclosureLabel::Personal: return "personal";
        case DisclosureLabel::HighRisk: return "high_risk";
    }
    return "?";
}

std::optional<DisclosureLabel> parse_label(std::string_view text) noexcept {
    if (text == "safe") return DisclosureLabel::Safe;
    if (text == "personal") return DisclosureLabel::Personal;
    if (text == "high_risk" || text == "high-risk" || text == "highrisk")
        return DisclosureLabel::HighRisk;
    return std::nullopt;
}

std::string_view to_string(SpanCategory category) noexcept {
    switch (category) {
        case SpanCategory::PersonName: return "PersonName";
        case SpanCategory::Location: return "Location";
        case SpanCategory::ContactInfo: return "ContactInfo";
        case SpanCategory::DateOfEvent: return "DateOfEvent";
        case SpanCategory::Identifier: return "Identifier";
        case SpanCategory::LifeEventDetail: return "LifeEventDetail";
        case SpanCategory::CrisisIndicator: return "CrisisIndicator";
    }
    return "?";
}

std::optional<SpanCategory> parse_category(std::string_view text) noexcept {
    for (auto c : kAllCategories)
        if (to_string(c) == text) return c;
    return std::nullopt;
}

std::string_view placeholder(SpanCategory category) noexcept {
    switch (category) {
        case SpanCategory::PersonName: return "[NAME]";
        case SpanCategory::Location: return "[PLACE]";
        case SpanCategory::ContactInfo: return "[CONTACT]";
        case SpanCategory::DateOfEvent: return "[DATE]";
        case SpanCategory::Identifier: return "[ID]";
        case SpanCategory::LifeEventDetail: return "[DETAIL]";
        case SpanCategory::CrisisIndicator: return "[CRISIS]";
    }
    return "[?]";
}

DisclosureLabel implied_label(SpanCategory category) noexcept {
    return category == SpanCategory::CrisisIndicator ? DisclosureLabel::HighRisk
                                                     : DisclosureLabel::Personal;
}

std::string_view to_string(LengthBand band) noexcept {
    switch (band) {
        case LengthBand::TooShort: return "too_short";
        case LengthBand::Ok: return "ok";
        case LengthBand::TooLong: return "too_long";
    }
    return "?";
}

std::string_view to_string(GuidanceLevel level) noexcept {
    switch (level) {
        case GuidanceLevel::Structured: return "structured";
        case GuidanceLevel::Moderate: return "moderate";
        case GuidanceLevel::Subtle: return "subtle";
    }
    return "?";
}

std::string_view to_string(InterventionKind kind) noexcept {
    switch (kind) {
        case InterventionKind::PromptHint: return "prompt_hint";
        case InterventionKind::DisclosureReflection: return "disclosure_reflection";
        case InterventionKind::TransparencyNote: return "transparency_note";
        case InterventionKind::CrisisReferral: return "crisis_referral";
    }
    return "?";
}

std::string_view to_string(OptionAction action) noexcept {
    switch (action) {
        case OptionAction::Continue: return "continue";
        case OptionAction::RephraseWith: return "rephrase_with";
        case OptionAction::FreeRephrase: return "free_rephrase";
    }
    return "?";
}

}  // namespace litgate
