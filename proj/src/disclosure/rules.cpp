#include "litgate/disclosure/rules.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "litgate/core/error.hpp"

namespace litgate::disclosure {

namespace fs = std::filesystem;

std::string_view to_string(MatcherKind kind) noexcept {
    switch (kind) {
        case MatcherKind::WordList: return "wordlist";
        case MatcherKind::Pattern: return "pattern";
        case MatcherKind::Gazetteer: return "gazetteer";
    }
    return "?";
}

CrisisLexicon::CrisisLexicon(std::string rule_id, const std::vector<std::string>& phrases)
    : rule_id_(std::move(rule_id)) {
    for (const auto& p : phrases) {
        if (text::trim(p).empty())
            throw ConfigError::validation("crisis_lexicon", "phrases must not be blank");
        matcher_.add(p);
    }
    if (matcher_.empty()) throw ConfigError::validation("crisis_lexicon", "must not be empty");
}

RuleSet RuleSet::compile(const std::vector<DetectionRule>& rules, const fs::path& base_dir) {
    RuleSet set;
    std::set<std::string> ids;
    for (const auto& rule : rules) {
        if (rule.rule_id.empty()) throw ConfigError::validation("rule_id", "must not be empty");
        if (!ids.insert(rule.rule_id).second)
            throw ConfigError::validation("rule_id", "duplicate rule id '" + rule.rule_id + "'");
        Compiled c;
        c.rule = rule;
        if (rule.kind == MatcherKind::Pattern) {
            auto flags = std::regex::ECMAScript | std::regex::optimize;
            if (!rule.case_sensitive) flags |= std::regex::icase;
            try {
                c.pattern = std::regex(rule.source, flags);
            } catch (const std::regex_error& e) {
                throw ConfigError::validation(rule.rule_id,
                                              std::string("pattern does not compile: ") + e.what());
            }
            c.has_group = c.pattern.mark_count() >= 1;
        } else {
            fs::path p(rule.source);
            if (p.is_relative()) p = base_dir / p;
            c.phrases = text::PhraseMatcher(text::load_word_list(p));
        }
        set.compiled_.push_back(std::move(c));
    }
    return set;
}

std::vector<DetectionRule> parse_rule_file(std::string_view source) {
    std::vector<DetectionRule> rules;
    std::istringstream in{std::string(source)};
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto t = text::trim(line);
        if (t.empty() || t.front() == '#') continue;

        // The source may itself contain '|', so split off the first three fields and the last.
        std::vector<std::string_view> head;
        std::string_view rest = t;
        for (int i = 0; i < 3; ++i) {
            const auto bar = rest.find('|');
            if (bar == std::string_view::npos)
                throw ConfigError::parse("expected 5 '|'-separated fields", line_no, 1);
            head.push_back(text::trim(rest.substr(0, bar)));
            rest = rest.substr(bar + 1);
        }
        const auto last_bar = rest.rfind('|');
        if (last_bar == std::string_view::npos)
            throw ConfigError::parse("expected 5 '|'-separated fields", line_no, 1);
        const auto src = text::trim(rest.substr(0, last_bar));
        const auto case_flag = text::trim(rest.substr(last_bar + 1));

        DetectionRule r;
        r.rule_id = std::string(head[0]);
        const auto cat = parse_category(head[1]);
        if (!cat)
            throw ConfigError::parse("unknown category '" + std::string(head[1]) + "'", line_no, 1);
        r.category = *cat;
        const auto kind = text::to_lower_ascii(head[2]);
        if (kind == "wordlist") r.kind = MatcherKind::WordList;
        else if (kind == "gazetteer") r.kind = MatcherKind::Gazetteer;
        else if (kind == "pattern") r.kind = MatcherKind::Pattern;
        else throw ConfigError::parse("unknown matcher kind '" + kind + "'", line_no, 1);
        if (src.empty()) throw ConfigError::parse("empty source", line_no, 1);
        r.source = std::string(src);
        const auto flag = text::to_lower_ascii(case_flag);
        if (flag == "sensitive") r.case_sensitive = true;
        else if (flag == "insensitive") r.case_sensitive = false;
        else throw ConfigError::parse("case flag must be sensitive|insensitive", line_no, 1);
        if (r.kind != MatcherKind::Pattern) r.case_sensitive = false;
        rules.push_back(std::move(r));
    }
    return rules;
}

LoadedRules load_rules(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError::missing_file(path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    auto definitions = parse_rule_file(buf.str());
    const auto base = fs::absolute(path).parent_path();
    std::set<std::string> ids;
    for (const auto& r : definitions)
        if (!ids.insert(r.rule_id).second)
            throw ConfigError::validation("rule_id", "duplicate rule id '" + r.rule_id + "'");

    std::vector<DetectionRule> others;
    std::string crisis_id;
    std::vector<std::string> crisis_phrases;
    for (const auto& r : definitions) {
        if (r.category == SpanCategory::CrisisIndicator && r.kind != MatcherKind::Pattern) {
            fs::path p(r.source);
            if (p.is_relative()) p = base / p;
            auto phrases = text::load_word_list(p);
            if (crisis_id.empty()) crisis_id = r.rule_id;
            crisis_phrases.insert(crisis_phrases.end(), phrases.begin(), phrases.end());
        } else {
            others.push_back(r);
        }
    }
    if (crisis_id.empty())
        throw ConfigError::validation("crisis_lexicon",
                                      "rule file has no CrisisIndicator word list");
    return LoadedRules{std::move(definitions), RuleSet::compile(others, base),
                       CrisisLexicon(crisis_id, crisis_phrases)};
}

}  // namespace litgate::disclosure
