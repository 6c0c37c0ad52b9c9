#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace litgate::text {

// A word in the source text with its byte range and normalized (lowercased) form.
struct Token {
    std::size_t start = 0;
    std::size_t end = 0;
    std::string norm;
};

// Splits on anything that is not a letter, digit or in-word apostrophe.
// Non-ASCII letters count as word characters; general punctuation (U+2000..U+206F,
// e.g. the ellipsis) separates words. U+2019 is normalized to an ASCII apostrophe.
std::vector<Token> tokenize(std::string_view text);

// Normalized tokens joined by single spaces.
std::string normalize_phrase(std::string_view phrase);

bool is_codepoint_boundary(std::string_view text, std::size_t offset) noexcept;
bool is_valid_utf8(std::string_view text) noexcept;

std::string_view trim(std::string_view s) noexcept;
std::string to_lower_ascii(std::string_view s);

// Reads a UTF-8 list: one entry per line, '#' starts a comment line, blank lines ignored.
// Throws ConfigError (MissingFile / ValidationError when the list is empty).
std::vector<std::string> load_word_list(const std::filesystem::path& path);

// Whole-phrase, word-boundary matching of a fixed phrase set over tokens.
class PhraseMatcher {
public:
    struct Match {
        std::size_t first_token = 0;
        std::size_t last_token = 0;  // inclusive
        std::size_t phrase_index = 0;
    };

    PhraseMatcher() = default;
    explicit PhraseMatcher(const std::vector<std::string>& phrases);

    void add(std::string_view phrase);
    bool empty() const noexcept { return index_.empty(); }
    std::size_t size() const noexcept { return phrases_.size(); }
    const std::string& phrase(std::size_t i) const { return phrases_[i]; }

    // Every occurrence of every phrase, ordered by first token then length (longest first).
    std::vector<Match> find_all(const std::vector<Token>& tokens) const;
    bool contains_any(const std::vector<Token>& tokens) const;

private:
    std::vector<std::string> phrases_;  // normalized
    std::unordered_map<std::string, std::size_t> index_;
    std::size_t max_tokens_ = 0;
};

}  // namespace litgate::text
