#include "litgate/coach/coach.hpp"

#include <algorithm>
#include <set>

#include "litgate/core/error.hpp"

namespace litgate::coach {

std::string_view to_string(MissingFeature feature) noexcept {
    switch (feature) {
        case MissingFeature::Topic: return "topic";
        case MissingFeature::Goal: return "goal";
        case MissingFeature::Specificity: return "specificity";
        case MissingFeature::TooShort: return "too_short";
        case MissingFeature::TooLong: return "too_long";
        case MissingFeature::Ambiguity: return "ambiguity";
    }
    return "?";
}

ClarityRubric::ClarityRubric(Lists lists)
    : topic_menu_(std::move(lists.topic_menu)),
      goal_markers_(lists.goal_markers),
      specificity_markers_(lists.specificity_markers),
      hedge_words_(lists.hedge_words),
      too_short_max_words_(lists.too_short_max_words),
      too_long_min_words_(lists.too_long_min_words) {
    if (too_short_max_words_ >= too_long_min_words_)
        throw ConfigError::validation("too_short_max_words", "must be below too_long_min_words");
    if (lists.topic_keywords.empty())
        throw ConfigError::validation("topic_keywords", "must not be empty");
    for (const auto& [topic, words] : lists.topic_keywords) {
        for (const auto& w : words) {
            const auto before = topic_matcher_.size();
            topic_matcher_.add(w);
            if (topic_matcher_.size() > before) phrase_topic_.push_back(topic);
        }
    }
}

ClarityRubric ClarityRubric::from_config(const GatewayConfig& config) {
    Lists l;
    l.topic_menu = config.topic_menu;
    l.topic_keywords = config.topic_keywords;
    l.goal_markers = text::load_word_list(config.lexicons.goal_markers);
    l.specificity_markers = text::load_word_list(config.lexicons.specificity_markers);
    l.hedge_words = text::load_word_list(config.lexicons.hedge_words);
    l.too_short_max_words = config.rubric.too_short_max_words;
    l.too_long_min_words = config.rubric.too_long_min_words;
    return ClarityRubric(std::move(l));
}

namespace {

bool all_digits(std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; });
}

}  // namespace

ClarityAssessment ClarityRubric::assess(std::string_view input) const {
    ClarityAssessment a;
    const auto tokens = text::tokenize(input);
    auto& f = a.features;

    const auto words = static_cast<int>(tokens.size());
    if (words <= too_short_max_words_) f.length_band = LengthBand::TooShort;
    else if (words >= too_long_min_words_) f.length_band = LengthBand::TooLong;
    else f.length_band = LengthBand::Ok;

    std::size_t first_content = tokens.size();
    const auto topic_hits = topic_matcher_.find_all(tokens);
    std::set<std::string> topics;
    for (const auto& m : topic_hits) {
        topics.insert(phrase_topic_[m.phrase_index]);
        std::string term(input.substr(tokens[m.first_token].start,
                                      tokens[m.last_token].end - tokens[m.first_token].start));
        if (std::find(a.topic_terms.begin(), a.topic_terms.end(), term) == a.topic_terms.end())
            a.topic_terms.push_back(std::move(term));
        first_content = std::min(first_content, m.first_token);
    }
    f.has_topic = !topic_hits.empty();
    for (const auto& t : topic_menu_)
        if (topics.count(t)) a.topics_detected.push_back(t);
    for (const auto& t : topics)
        if (std::find(topic_menu_.begin(), topic_menu_.end(), t) == topic_menu_.end())
            a.topics_detected.push_back(t);

    f.has_goal = goal_markers_.contains_any(tokens);

    const auto spec_hits = specificity_markers_.find_all(tokens);
    f.specificity_hits = static_cast<int>(spec_hits.size());
    for (const auto& m : spec_hits) first_content = std::min(first_content, m.first_token);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        if (all_digits(tokens[i].norm)) {
            ++f.specificity_hits;
            first_content = std::min(first_content, i);
        }
    }

    f.ambiguity_flags = static_cast<int>(hedge_words_.find_all(tokens).size());
    // "it" before anything it could refer to in this turn.
    for (std::size_t i = 0; i < tokens.size() && i < first_content; ++i)
        if (tokens[i].norm == "it" || tokens[i].norm == "it's") ++f.ambiguity_flags;

    a.score = clarity_score(f);
    return a;
}

int clarity_score(const ClarityFeatures& f) noexcept {
    int score = 1 + (f.has_topic ? 1 : 0) + (f.has_goal ? 1 : 0) +
                (f.specificity_hits >= 1 ? 1 : 0) + (f.length_band == LengthBand::Ok ? 1 : 0);
    if (f.ambiguity_flags >= 2) score -= 1;
    return std::clamp(score, 1, 5);
}

ClarityAssessment assess_clarity(std::string_view text, const ClarityRubric& rubric) {
    return rubric.assess(text);
}

std::vector<MissingFeature> missing_features(const ClarityFeatures& f) {
    std::vector<MissingFeature> out;
    if (!f.has_topic) out.push_back(MissingFeature::Topic);
    if (!f.has_goal) out.push_back(MissingFeature::Goal);
    if (f.specificity_hits < 1) out.push_back(MissingFeature::Specificity);
    if (f.length_band == LengthBand::TooShort) out.push_back(MissingFeature::TooShort);
    if (f.length_band == LengthBand::TooLong) out.push_back(MissingFeature::TooLong);
    if (f.ambiguity_flags >= 2) out.push_back(MissingFeature::Ambiguity);
    return out;
}

std::string join_topics(const std::vector<std::string>& topics) {
    std::string out;
    for (std::size_t i = 0; i < topics.size(); ++i) {
        if (i > 0) {
            if (topics.size() == 2) out += " or ";
            else out += (i + 1 == topics.size()) ? ", or " : ", ";
        }
        out += topics[i];
    }
    return out;
}

HintTemplateSet::HintTemplateSet(std::vector<std::string> topic_menu)
    : topics_(std::move(topic_menu)) {
    const std::string menu(kTopicMenuTemplate);
    templates_[static_cast<int>(GuidanceLevel::Structured)] = {
        menu,
        "Try saying what you'd like back, for example \"Can you explain...\" or \"Give me two "
        "tips for...\".",
        "Adding one concrete detail helps, such as when it happens (\"before exams\") or how "
        "often (\"most nights\").",
        "A little more detail will help. Try a full sentence about what is going on and what "
        "you need.",
        "That covers a lot at once. Try picking the one part that matters most right now.",
        "Words like \"something\" or \"stuff\" are hard to interpret. Can you name what you "
        "mean?",
    };
    templates_[static_cast<int>(GuidanceLevel::Moderate)] = {
        menu,
        "What would you like from the reply: an explanation, tips, or a plan?",
        "A concrete detail, like when or how often, would help.",
        "Could you add a bit more detail?",
        "Could you focus on the main point?",
        "Could you say what \"it\" or \"stuff\" refers to?",
    };
    templates_[static_cast<int>(GuidanceLevel::Subtle)] = {
        menu,
        "Tip: say what you'd like back.",
        "Tip: one concrete detail helps.",
        "Tip: a bit more detail helps.",
        "Tip: try focusing on one point.",
        "Tip: name what you mean.",
    };
}

HintTemplateSet HintTemplateSet::with_overrides(
    const std::map<std::string, std::string>& overrides) const {
    HintTemplateSet copy = *this;
    for (const auto& [key, value] : overrides) {
        const auto dot = key.find('.');
        bool applied = false;
        if (dot != std::string::npos) {
            const auto level = key.substr(0, dot);
            const auto feature = key.substr(dot + 1);
            for (auto l : {GuidanceLevel::Structured, GuidanceLevel::Moderate, GuidanceLevel::Subtle}) {
                if (to_string(l) != level) continue;
                for (auto f : kAllMissingFeatures) {
                    if (to_string(f) != feature) continue;
                    if (value.empty())
                        throw ConfigError::validation("rubric.hints." + key, "must not be empty");
                    copy.templates_[static_cast<int>(l)][static_cast<int>(f)] = value;
                    applied = true;
                }
            }
        }
        if (!applied) throw ConfigError::validation("rubric.hints." + key, "unknown hint template");
    }
    return copy;
}

const std::string& HintTemplateSet::raw(GuidanceLevel level, MissingFeature feature) const {
    return templates_[static_cast<int>(level)][static_cast<int>(feature)];
}

std::string HintTemplateSet::render(GuidanceLevel level, MissingFeature feature) const {
    std::string out = raw(level, feature);
    constexpr std::string_view slot = "{topics}";
    const auto joined = join_topics(topics_);
    for (auto pos = out.find(slot); pos != std::string::npos; pos = out.find(slot, pos)) {
        out.replace(pos, slot.size(), joined);
        pos += joined.size();
    }
    return out;
}

namespace {

std::string sentence_form(std::string_view text) {
    std::string s(text::trim(text));
    if (s.empty()) return s;
    const char last = s.back();
    const bool ends_ellipsis = s.size() >= 3 && s.compare(s.size() - 3, 3, "\xE2\x80\xA6") == 0;
    if (last != '.' && last != '?' && last != '!' && !ends_ellipsis) s += ".";
    return s;
}

std::vector<std::string> rephrase_candidates(const ClarityAssessment& a,
                                             const std::vector<MissingFeature>& missing,
                                             const std::vector<std::string>& menu,
                                             std::string_view user_text) {
    std::vector<std::string> out;
    const auto own = sentence_form(user_text);
    if (own.empty()) return out;
    for (auto f : missing) {
        if (f == MissingFeature::Topic) {
            for (const auto& t : menu) out.push_back("I'd like to focus on " + t + ". " + own);
        } else if (f == MissingFeature::Goal) {
            if (!a.topic_terms.empty())
                out.push_back(own + " Can you explain more about " + a.topic_terms.front() + "?");
            out.push_back(own + " Can you help me with this?");
        }
    }
    return out;
}

}  // namespace

HintSet generate_hints(const ClarityAssessment& assessment, const SkillProfile& skill,
                       const HintTemplateSet& templates, int threshold,
                       std::string_view user_text) {
    HintSet out;
    if (assessment.score >= threshold) return out;
    auto missing = missing_features(assessment.features);
    if (missing.empty()) missing.push_back(MissingFeature::Specificity);

    std::size_t max_hints = 1;
    std::size_t max_options = 0;
    switch (skill.guidance_level) {
        case GuidanceLevel::Structured: max_hints = 3; max_options = 3; break;
        case GuidanceLevel::Moderate: max_hints = 2; max_options = 1; break;
        case GuidanceLevel::Subtle: max_hints = 1; max_options = 0; break;
    }
    for (std::size_t i = 0; i < missing.size() && out.hints.size() < max_hints; ++i)
        out.hints.push_back(templates.render(skill.guidance_level, missing[i]));

    if (max_options > 0) {
        auto options = rephrase_candidates(assessment, missing, templates.topic_menu(), user_text);
        if (options.size() > max_options) options.resize(max_options);
        out.rephrase_options = std::move(options);
    }
    return out;
}

GuidanceLevel guidance_for(double rolling, const RubricSettings& s) noexcept {
    if (rolling < s.moderate_threshold) return GuidanceLevel::Structured;
    if (rolling < s.subtle_threshold) return GuidanceLevel::Moderate;
    return GuidanceLevel::Subtle;
}

SkillProfile update_skill(const SkillProfile& profile, int score,
                          const RubricSettings& s) noexcept {
    SkillProfile next = profile;
    const double clamped = std::clamp(score, 1, 5);
    next.rolling_clarity =
        std::clamp(profile.rolling_clarity + s.ema_weight * (clamped - profile.rolling_clarity),
                   1.0, 5.0);
    next.turns_observed = profile.turns_observed + 1;
    next.guidance_level = guidance_for(next.rolling_clarity, s);
    return next;
}

PromptCoach::PromptCoach(std::shared_ptr<const ClarityScorer> scorer, HintTemplateSet templates,
                         RubricSettings settings)
    : scorer_(std::move(scorer)), templates_(std::move(templates)), settings_(settings) {}

PromptCoach PromptCoach::from_config(const GatewayConfig& config) {
    auto scorer = std::make_shared<RubricScorer>(ClarityRubric::from_config(config));
    auto templates = HintTemplateSet(config.topic_menu).with_overrides(config.hint_overrides);
    return PromptCoach(std::move(scorer), std::move(templates), config.rubric);
}

ClarityAssessment PromptCoach::coach(std::string_view text, const SkillProfile& skill) const {
    auto a = scorer_->assess(text);
    auto hs = generate_hints(a, skill, templates_, settings_.clarity_hint_threshold, text);
    a.hints = std::move(hs.hints);
    a.rephrase_options = std::move(hs.rephrase_options);
    return a;
}

}  // namespace litgate::coach
