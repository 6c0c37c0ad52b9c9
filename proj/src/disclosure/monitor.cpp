#include "litgate/disclosure/monitor.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "litgate/core/error.hpp"
#include "litgate/core/text.hpp"

namespace litgate::disclosure {

namespace {

using text::Token;

SensitiveSpan make_span(std::string_view text, std::size_t start, std::size_t end,
                        SpanCategory category, const std::string& rule_id) {
    return SensitiveSpan{start, end, category, std::string(text.substr(start, end - start)),
                         rule_id};
}

struct Sentence {
    std::size_t start;
    std::size_t end;
};

// Sentence breaks at '.', '!', '?' followed by whitespace or end of text, and at newlines.
std::vector<Sentence> split_sentences(std::string_view s) {
    std::vector<Sentence> out;
    std::size_t begin = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        bool brk = c == '\n';
        if (c == '.' || c == '!' || c == '?') {
            brk = i + 1 == s.size() || s[i + 1] == ' ' || s[i + 1] == '\t' || s[i + 1] == '\n' ||
                  s[i + 1] == '\r';
        }
        if (brk) {
            out.push_back({begin, i + 1});
            begin = i + 1;
        }
    }
    if (begin < s.size()) out.push_back({begin, s.size()});
    return out;
}

bool is_first_person(const std::vector<Token>& tokens, const Sentence& sentence) {
    static const std::set<std::string, std::less<>> kFirstPerson = {
        "i", "i'm", "i've", "i'd", "i'll", "me", "my", "mine", "myself", "we", "we're", "our", "us"};
    for (const auto& t : tokens)
        if (t.start >= sentence.start && t.end <= sentence.end && kFirstPerson.count(t.norm))
            return true;
    return false;
}

void add_pattern_matches(std::string_view text, const RuleSet::Compiled& c,
                         std::vector<SensitiveSpan>& out) {
    const char* first = text.data();
    const char* last = text.data() + text.size();
    for (std::cregex_iterator it(first, last, c.pattern), end; it != end; ++it) {
        const auto& m = *it;
        const bool use_group = c.has_group && m[1].matched;
        const auto pos = static_cast<std::size_t>(use_group ? m.position(1) : m.position(0));
        const auto len = static_cast<std::size_t>(use_group ? m.length(1) : m.length(0));
        if (len == 0) continue;
        if (!text::is_codepoint_boundary(text, pos) || !text::is_codepoint_boundary(text, pos + len))
            continue;
        out.push_back(make_span(text, pos, pos + len, c.rule.category, c.rule.rule_id));
    }
}

void add_life_events(std::string_view text, const std::vector<Token>& tokens,
                     const RuleSet::Compiled& c, std::vector<SensitiveSpan>& out) {
    const auto matches = c.phrases.find_all(tokens);
    if (matches.empty()) return;
    const auto sentences = split_sentences(text);
    // Anchors are the date and place candidates found so far.
    const std::vector<SensitiveSpan> anchors_pool = out;
    std::vector<SensitiveSpan> found;
    for (const auto& m : matches) {
        const auto ev_start = tokens[m.first_token].start;
        const auto ev_end = tokens[m.last_token].end;
        auto sit = std::find_if(sentences.begin(), sentences.end(), [&](const Sentence& s) {
            return ev_start >= s.start && ev_start < s.end;
        });
        if (sit == sentences.end() || !is_first_person(tokens, *sit)) continue;
        std::size_t lo = ev_start;
        std::size_t hi = ev_end;
        bool anchored = false;
        for (const auto& a : anchors_pool) {
            if (a.category != SpanCategory::DateOfEvent && a.category != SpanCategory::Location)
                continue;
            if (a.start < sit->start || a.end > sit->end) continue;
            anchored = true;
            lo = std::min(lo, a.start);
            hi = std::max(hi, a.end);
        }
        if (anchored) found.push_back(make_span(text, lo, hi, c.rule.category, c.rule.rule_id));
    }
    out.insert(out.end(), found.begin(), found.end());
}

// Further exact, word-aligned occurrences of already accepted span texts.
std::vector<SensitiveSpan> repeat_occurrences(std::string_view text,
                                              const std::vector<Token>& tokens,
                                              const std::vector<SensitiveSpan>& accepted) {
    auto inside_token = [&](std::size_t pos) {
        for (const auto& t : tokens)
            if (t.start < pos && pos < t.end) return true;
        return false;
    };
    std::vector<SensitiveSpan> extra;
    for (const auto& span : accepted) {
        if (span.category == SpanCategory::LifeEventDetail) continue;
        std::size_t from = 0;
        while (true) {
            const auto pos = text.find(span.matched_text, from);
            if (pos == std::string_view::npos) break;
            from = pos + 1;
            const auto end = pos + span.matched_text.size();
            if (inside_token(pos) || inside_token(end)) continue;
            const SensitiveSpan candidate = make_span(text, pos, end, span.category, span.rule_id);
            const bool clash = std::any_of(accepted.begin(), accepted.end(), [&](const auto& a) {
                return a.overlaps(candidate);
            });
            if (!clash) extra.push_back(candidate);
        }
    }
    return extra;
}

}  // namespace

std::vector<SensitiveSpan> collect_candidates(std::string_view text, const RuleSet& rules,
                                              const CrisisLexicon& lexicon) {
    std::vector<SensitiveSpan> out;
    const auto tokens = text::tokenize(text);
    for (const auto& m : lexicon.matcher().find_all(tokens)) {
        out.push_back(make_span(text, tokens[m.first_token].start, tokens[m.last_token].end,
                                SpanCategory::CrisisIndicator, lexicon.rule_id()));
    }
    std::vector<const RuleSet::Compiled*> life_event_rules;
    for (const auto& c : rules.rules()) {
        if (c.rule.kind == MatcherKind::Pattern) {
            add_pattern_matches(text, c, out);
        } else if (c.rule.category == SpanCategory::LifeEventDetail) {
            life_event_rules.push_back(&c);
        } else {
            for (const auto& m : c.phrases.find_all(tokens))
                out.push_back(make_span(text, tokens[m.first_token].start,
                                        tokens[m.last_token].end, c.rule.category,
                                        c.rule.rule_id));
        }
    }
    for (const auto* c : life_event_rules) add_life_events(text, tokens, *c, out);
    return out;
}

std::vector<SensitiveSpan> merge_spans(std::vector<SensitiveSpan> candidates) {
    auto priority = [](const SensitiveSpan& s) {
        return std::make_tuple(-static_cast<int>(implied_label(s.category)),
                               -static_cast<long long>(s.length()), s.start, s.rule_id,
                               static_cast<int>(s.category));
    };
    std::sort(candidates.begin(), candidates.end(),
              [&](const auto& a, const auto& b) { return priority(a) < priority(b); });
    std::vector<SensitiveSpan> kept;
    for (auto& c : candidates) {
        const bool clash =
            std::any_of(kept.begin(), kept.end(), [&](const auto& k) { return k.overlaps(c); });
        if (!clash) kept.push_back(std::move(c));
    }
    std::sort(kept.begin(), kept.end(),
              [](const auto& a, const auto& b) { return a.start < b.start; });
    return kept;
}

std::vector<SensitiveSpan> detect_spans(std::string_view text, const RuleSet& rules,
                                        const CrisisLexicon& lexicon) {
    auto merged = merge_spans(collect_candidates(text, rules, lexicon));
    const auto tokens = text::tokenize(text);
    auto extra = repeat_occurrences(text, tokens, merged);
    if (extra.empty()) return merged;
    merged.insert(merged.end(), extra.begin(), extra.end());
    return merge_spans(std::move(merged));
}

DisclosureLabel classify(std::string_view /*text*/, std::span<const SensitiveSpan> spans) {
    DisclosureLabel label = DisclosureLabel::Safe;
    for (const auto& s : spans) label = severity_max(label, implied_label(s.category));
    return label;
}

std::string redact(std::string_view text, std::span<const SensitiveSpan> spans) {
    std::vector<const SensitiveSpan*> ordered;
    ordered.reserve(spans.size());
    for (const auto& s : spans) ordered.push_back(&s);
    std::sort(ordered.begin(), ordered.end(),
              [](const auto* a, const auto* b) { return a->start < b->start; });

    std::string out;
    out.reserve(text.size());
    std::size_t cursor = 0;
    for (const auto* s : ordered) {
        if (s->start >= s->end || s->end > text.size())
            throw SpanOutOfBounds("span [" + std::to_string(s->start) + ", " +
                                  std::to_string(s->end) + ") outside text of length " +
                                  std::to_string(text.size()));
        if (!text::is_codepoint_boundary(text, s->start) ||
            !text::is_codepoint_boundary(text, s->end))
            throw SpanOutOfBounds("span [" + std::to_string(s->start) + ", " +
                                  std::to_string(s->end) + ") splits a UTF-8 codepoint");
        if (s->start < cursor)
            throw SpanOutOfBounds("span at " + std::to_string(s->start) + " overlaps another span");
        out.append(text.substr(cursor, s->start - cursor));
        out.append(placeholder(s->category));
        cursor = s->end;
    }
    out.append(text.substr(cursor));
    return out;
}

DisclosureMonitor DisclosureMonitor::from_rule_file(const std::filesystem::path& rules_path) {
    auto loaded = load_rules(rules_path);
    return DisclosureMonitor(std::make_shared<RuleBasedDetector>(std::move(loaded.rules),
                                                                 std::move(loaded.crisis)));
}

DisclosureReport DisclosureMonitor::build_report(std::string_view text) const {
    DisclosureReport report;
    report.spans = detector_->detect(text);
    report.label = classify(text, report.spans);
    report.redacted_text = redact(text, report.spans);

    std::set<std::string> rules;
    std::set<SpanCategory> categories;
    for (const auto& s : report.spans) {
        rules.insert(s.rule_id);
        categories.insert(s.category);
    }
    report.fired_rules.assign(rules.begin(), rules.end());

    if (report.spans.empty()) {
        report.rationale = "safe: no sensitive details detected";
        return report;
    }
    std::string r(to_string(report.label));
    r += ": ";
    bool first = true;
    for (auto c : categories) {
        if (!first) r += ", ";
        r += to_string(c);
        first = false;
    }
    r += " (rules: ";
    first = true;
    for (const auto& id : report.fired_rules) {
        if (!first) r += ", ";
        r += id;
        first = false;
    }
    r += ")";
    report.rationale = std::move(r);
    return report;
}

DisclosureReport build_report(std::string_view text, const GatewayConfig& config) {
    return DisclosureMonitor::from_config(config).build_report(text);
}

std::vector<Intervention> interventions_for(const DisclosureReport& report,
                                            const GatewayConfig& config) {
    std::vector<Intervention> out;
    if (report.label == DisclosureLabel::Safe) return out;

    const bool high_risk = report.label == DisclosureLabel::HighRisk;
    Intervention reflection;
    reflection.kind = InterventionKind::DisclosureReflection;
    reflection.message = std::string(kReflectionCue);
    reflection.blocking = true;
    if (!(high_risk && config.limits.block_high_risk_forwarding))
        reflection.options.push_back({"Continue", OptionAction::Continue, {}});
    reflection.options.push_back(
        {"Use suggested rephrase", OptionAction::RephraseWith, report.redacted_text});
    reflection.options.push_back({"Edit myself", OptionAction::FreeRephrase, {}});
    out.push_back(std::move(reflection));

    if (high_risk) {
        Intervention referral;
        referral.kind = InterventionKind::CrisisReferral;
        referral.message = std::string(kCrisisReferralMessage);
        referral.blocking = true;
        referral.referral_links = config.referral_registry;
        out.push_back(std::move(referral));
    }
    return out;
}

}  // namespace litgate::disclosure
