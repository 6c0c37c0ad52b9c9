#pragma once

#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "litgate/core/config.hpp"
#include "litgate/core/types.hpp"
#include "litgate/disclosure/rules.hpp"

namespace litgate::disclosure {

// Exact cue shown on Personal and HighRisk messages.
inline constexpr std::string_view kReflectionCue =
    "This message may include personal details. Would you like to rephrase or continue?";

inline constexpr std::string_view kCrisisReferralMessage =
    "It sounds like you might be going through something really hard. You don't have to face "
    "it alone. These services can talk with you right now:";

// Detector seam. The rule engine is one implementation; a learned tagger can be another.
class SpanDetector {
public:
    virtual ~SpanDetector() = default;
    // Merged, non-overlapping spans sorted by start offset.
    virtual std::vector<SensitiveSpan> detect(std::string_view text) const = 0;
};

// Raw candidate spans from every rule, before overlap resolution.
std::vector<SensitiveSpan> collect_candidates(std::string_view text, const RuleSet& rules,
                                              const CrisisLexicon& lexicon);

// Resolves overlaps: higher severity first (CrisisIndicator beats all), then the longer span,
// then the earlier start. Output is sorted by start.
std::vector<SensitiveSpan> merge_spans(std::vector<SensitiveSpan> candidates);

std::vector<SensitiveSpan> detect_spans(std::string_view text, const RuleSet& rules,
                                        const CrisisLexicon& lexicon);

DisclosureLabel classify(std::string_view text, std::span<const SensitiveSpan> spans);

// Throws SpanOutOfBounds when a span leaves the text, splits a codepoint, is empty or
// overlaps another.
std::string redact(std::string_view text, std::span<const SensitiveSpan> spans);

class RuleBasedDetector final : public SpanDetector {
public:
    RuleBasedDetector(RuleSet rules, CrisisLexicon lexicon)
        : rules_(std::move(rules)), lexicon_(std::move(lexicon)) {}

    std::vector<SensitiveSpan> detect(std::string_view text) const override {
        return detect_spans(text, rules_, lexicon_);
    }

    const RuleSet& rules() const noexcept { return rules_; }
    const CrisisLexicon& lexicon() const noexcept { return lexicon_; }

private:
    RuleSet rules_;
    CrisisLexicon lexicon_;
};

class DisclosureMonitor {
public:
    explicit DisclosureMonitor(std::shared_ptr<const SpanDetector> detector)
        : detector_(std::move(detector)) {}

    static DisclosureMonitor from_rule_file(const std::filesystem::path& rules_path);
    static DisclosureMonitor from_config(const GatewayConfig& config) {
        return from_rule_file(config.lexicons.rules);
    }

    // detect -> classify -> redact, with a rationale naming the fired rules.
    DisclosureReport build_report(std::string_view text) const;

private:
    std::shared_ptr<const SpanDetector> detector_;
};

DisclosureReport build_report(std::string_view text, const GatewayConfig& config);

std::vector<Intervention> interventions_for(const DisclosureReport& report,
                                            const GatewayConfig& config);

}  // namespace litgate::disclosure
