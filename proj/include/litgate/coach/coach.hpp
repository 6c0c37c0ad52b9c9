#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "litgate/core/config.hpp"
#include "litgate/core/text.hpp"
#include "litgate/core/types.hpp"

namespace litgate::coach {

// Exact topic-menu question, with the configured topics interpolated at {topics}.
inline constexpr std::string_view kTopicMenuTemplate = "Would you like to focus on {topics}?";

// Rubric features a prompt can be missing, in hint priority order.
enum class MissingFeature : std::uint8_t { Topic, Goal, Specificity, TooShort, TooLong, Ambiguity };

inline constexpr std::array<MissingFeature, 6> kAllMissingFeatures = {
    MissingFeature::Topic,   MissingFeature::Goal,    MissingFeature::Specificity,
    MissingFeature::TooShort, MissingFeature::TooLong, MissingFeature::Ambiguity};

std::string_view to_string(MissingFeature feature) noexcept;

class ClarityRubric {
public:
    struct Lists {
        std::vector<std::string> topic_menu;
        std::map<std::string, std::vector<std::string>> topic_keywords;
        std::vector<std::string> goal_markers;
        std::vector<std::string> specificity_markers;
        std::vector<std::string> hedge_words;
        int too_short_max_words = 3;
        int too_long_min_words = 120;
    };

    // Throws ConfigError(ValidationError) when the bands are inverted or topics are empty.
    explicit ClarityRubric(Lists lists);
    static ClarityRubric from_config(const GatewayConfig& config);

    const std::vector<std::string>& topic_menu() const noexcept { return topic_menu_; }
    int too_short_max_words() const noexcept { return too_short_max_words_; }
    int too_long_min_words() const noexcept { return too_long_min_words_; }

    // Feature extraction only; hints are filled by generate_hints.
    ClarityAssessment assess(std::string_view text) const;

private:
    std::vector<std::string> topic_menu_;
    text::PhraseMatcher topic_matcher_;
    std::vector<std::string> phrase_topic_;  // matcher phrase index -> topic
    text::PhraseMatcher goal_markers_;
    text::PhraseMatcher specificity_markers_;
    text::PhraseMatcher hedge_words_;
    int too_short_max_words_;
    int too_long_min_words_;
};

// 1 + has_topic + has_goal + (specificity_hits >= 1) + (length_band == Ok),
// minus 1 when ambiguity_flags >= 2, never below 1.
int clarity_score(const ClarityFeatures& features) noexcept;

ClarityAssessment assess_clarity(std::string_view text, const ClarityRubric& rubric);

// Missing features of an assessment, in priority order.
std::vector<MissingFeature> missing_features(const ClarityFeatures& features);

class HintTemplateSet {
public:
    // Built-in templates for every (level, feature) pair.
    explicit HintTemplateSet(std::vector<std::string> topic_menu);
    // Applies "<level>.<feature>" overrides; throws ConfigError on unknown keys.
    HintTemplateSet with_overrides(const std::map<std::string, std::string>& overrides) const;

    // Template with {topics} replaced by the menu ("a, b, or c").
    std::string render(GuidanceLevel level, MissingFeature feature) const;
    const std::string& raw(GuidanceLevel level, MissingFeature feature) const;
    const std::vector<std::string>& topic_menu() const noexcept { return topics_; }

private:
    std::vector<std::string> topics_;
    std::array<std::array<std::string, 6>, 3> templates_;
};

// "a", "a or b", "a, b, or c".
std::string join_topics(const std::vector<std::string>& topics);

struct HintSet {
    std::vector<std::string> hints;
    std::vector<std::string> rephrase_options;

    bool operator==(const HintSet&) const = default;
};

// Empty when score >= threshold. Structured: <= 3 hints and <= 3 options; Moderate: <= 2 hints
// and <= 1 option; Subtle: exactly one hint, no options. Options reuse the user's text.
HintSet generate_hints(const ClarityAssessment& assessment, const SkillProfile& skill,
                       const HintTemplateSet& templates, int threshold,
                       std::string_view user_text = {});

GuidanceLevel guidance_for(double rolling_clarity, const RubricSettings& settings = {}) noexcept;

// EMA update: rolling <- (1 - w) * rolling + w * score.
SkillProfile update_skill(const SkillProfile& profile, int score,
                          const RubricSettings& settings = {}) noexcept;

// Scorer seam so a learned rater can replace the rubric.
class ClarityScorer {
public:
    virtual ~ClarityScorer() = default;
    virtual ClarityAssessment assess(std::string_view text) const = 0;
};

class RubricScorer final : public ClarityScorer {
public:
    explicit RubricScorer(ClarityRubric rubric) : rubric_(std::move(rubric)) {}
    ClarityAssessment assess(std::string_view text) const override { return rubric_.assess(text); }
    const ClarityRubric& rubric() const noexcept { return rubric_; }

private:
    ClarityRubric rubric_;
};

class PromptCoach {
public:
    PromptCoach(std::shared_ptr<const ClarityScorer> scorer, HintTemplateSet templates,
                RubricSettings settings);
    static PromptCoach from_config(const GatewayConfig& config);

    // Scored assessment with hints and options for the given skill level.
    ClarityAssessment coach(std::string_view text, const SkillProfile& skill) const;
    SkillProfile update(const SkillProfile& profile, int score) const noexcept {
        return update_skill(profile, score, settings_);
    }
    const RubricSettings& settings() const noexcept { return settings_; }
    const HintTemplateSet& templates() const noexcept { return templates_; }

private:
    std::shared_ptr<const ClarityScorer> scorer_;
    HintTemplateSet templates_;
    RubricSettings settings_;
};

}  // namespace litgate::coach
