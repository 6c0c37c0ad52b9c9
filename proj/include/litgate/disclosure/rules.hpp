#pragma once

#include <filesystem>
#include <memory>
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "litgate/core/text.hpp"
#include "litgate/core/types.hpp"

namespace litgate::disclosure {

enum class MatcherKind { WordList, Pattern, Gazetteer };

std::string_view to_string(MatcherKind kind) noexcept;

struct DetectionRule {
    std::string rule_id;
    SpanCategory category = SpanCategory::PersonName;
    MatcherKind kind = MatcherKind::WordList;
    // File path for word lists and gazetteers, regular expression source for patterns.
    std::string source;
    bool case_sensitive = false;

    bool operator==(const DetectionRule&) const = default;
};

// Whole-phrase crisis lexicon, matched case-insensitively on word boundaries.
class CrisisLexicon {
public:
    CrisisLexicon(std::string rule_id, const std::vector<std::string>& phrases);

    const std::string& rule_id() const noexcept { return rule_id_; }
    const text::PhraseMatcher& matcher() const noexcept { return matcher_; }
    std::size_t size() const noexcept { return matcher_.size(); }

private:
    std::string rule_id_;
    text::PhraseMatcher matcher_;
};

// A compiled, immutable rule set (everything except the crisis lexicon).
class RuleSet {
public:
    struct Compiled {
        DetectionRule rule;
        text::PhraseMatcher phrases;  // WordList / Gazetteer
        std::regex pattern;           // Pattern
        bool has_group = false;
    };

    // Word list / gazetteer sources resolve against base_dir.
    static RuleSet compile(const std::vector<DetectionRule>& rules,
                           const std::filesystem::path& base_dir);

    const std::vector<Compiled>& rules() const noexcept { return compiled_; }
    std::size_t size() const noexcept { return compiled_.size(); }

private:
    std::vector<Compiled> compiled_;
};

struct LoadedRules {
    std::vector<DetectionRule> definitions;
    RuleSet rules;
    CrisisLexicon crisis;
};

// Parses the "rule_id | category | kind | source | case" rule file format.
std::vector<DetectionRule> parse_rule_file(std::string_view source);

// Reads, validates and compiles a rule file. The CrisisIndicator word-list rule becomes the
// crisis lexicon. Throws ConfigError on unreadable files, bad lines, duplicate ids or
// patterns that fail to compile.
LoadedRules load_rules(const std::filesystem::path& path);

}  // namespace litgate::disclosure
