#include "litgate/core/text.hpp"

#include <algorithm>
#include <fstream>

#include "litgate/core/error.hpp"

namespace litgate::text {
namespace {

struct Decoded {
    char32_t cp;
    std::size_t len;
};

// Invalid sequences decode as a single replacement unit of length 1.
Decoded decode(std::string_view s, std::size_t i) noexcept {
    const auto b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) return {b0, 1};
    std::size_t len = 0;
    char32_t cp = 0;
    if ((b0 & 0xE0) == 0xC0) {
        len = 2;
        cp = b0 & 0x1F;
    } else if ((b0 & 0xF0) == 0xE0) {
        len = 3;
        cp = b0 & 0x0F;
    } else if ((b0 & 0xF8) == 0xF0) {
        len = 4;
        cp = b0 & 0x07;
    } else {
        return {0xFFFD, 1};
    }
    if (i + len > s.size()) return {0xFFFD, 1};
    for (std::size_t k = 1; k < len; ++k) {
        const auto b = static_cast<unsigned char>(s[i + k]);
        if ((b & 0xC0) != 0x80) return {0xFFFD, 1};
        cp = (cp << 6) | (b & 0x3F);
    }
    return {cp, len};
}

bool is_apostrophe(char32_t cp) noexcept { return cp == U'\'' || cp == U'’'; }

bool is_word_cp(char32_t cp) noexcept {
    if (cp < 0x80) {
        return (cp >= 'a' && cp <= 'z') || (cp >= 'A' && cp <= 'Z') || (cp >= '0' && cp <= '9');
    }
    if (cp == 0xFFFD) return false;
    if (cp >= 0x2000 && cp <= 0x206F) return false;  // general punctuation
    if (cp >= 0x3000 && cp <= 0x303F) return false;  // CJK punctuation
    if (cp == 0x00A0 || (cp >= 0x00A1 && cp <= 0x00BF) || cp == 0x00D7 || cp == 0x00F7)
        return false;
    if (cp >= 0xFE00 && cp <= 0xFE0F) return false;  // variation selectors
    if (cp >= 0x1F000) return false;                 // emoji and symbols
    return true;
}

void append_lower(std::string& out, std::string_view s, std::size_t i, const Decoded& d) {
    if (d.len == 1) {
        char c = s[i];
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
        out.push_back(c);
    } else {
        out.append(s.substr(i, d.len));
    }
}

}  // namespace

std::vector<Token> tokenize(std::string_view s) {
    std::vector<Token> tokens;
    std::size_t i = 0;
    while (i < s.size()) {
        Decoded d = decode(s, i);
        if (!is_word_cp(d.cp)) {
            i += d.len;
            continue;
        }
        Token tok;
        tok.start = i;
        while (i < s.size()) {
            d = decode(s, i);
            if (is_word_cp(d.cp)) {
                append_lower(tok.norm, s, i, d);
                i += d.len;
                continue;
            }
            // An apostrophe stays inside the word only when a word character follows.
            if (is_apostrophe(d.cp) && i + d.len < s.size() &&
                is_word_cp(decode(s, i + d.len).cp)) {
                tok.norm.push_back('\'');
                i += d.len;
                continue;
            }
            break;
        }
        tok.end = i;
        tokens.push_back(std::move(tok));
    }
    return tokens;
}

std::string normalize_phrase(std::string_view phrase) {
    std::string out;
    for (const auto& t : tokenize(phrase)) {
        if (!out.empty()) out.push_back(' ');
        out += t.norm;
    }
    return out;
}

bool is_codepoint_boundary(std::string_view s, std::size_t offset) noexcept {
    if (offset == 0 || offset == s.size()) return true;
    if (offset > s.size()) return false;
    return (static_cast<unsigned char>(s[offset]) & 0xC0) != 0x80;
}

bool is_valid_utf8(std::string_view s) noexcept {
    std::size_t i = 0;
    while (i < s.size()) {
        const auto d = decode(s, i);
        if (d.cp == 0xFFFD && d.len == 1) return false;
        i += d.len;
    }
    return true;
}

std::string_view trim(std::string_view s) noexcept {
    constexpr std::string_view ws = " \t\r\n\f\v";
    const auto b = s.find_first_not_of(ws);
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(ws);
    return s.substr(b, e - b + 1);
}

std::string to_lower_ascii(std::string_view s) {
    std::string out(s);
    for (auto& c : out)
        if (c >= 'A' && c <= 'Z') c = static_cast<char>(c - 'A' + 'a');
    return out;
}

std::vector<std::string> load_word_list(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError::missing_file(path.string());
    std::vector<std::string> entries;
    std::string line;
    while (std::getline(in, line)) {
        auto t = trim(line);
        if (t.empty() || t.front() == '#') continue;
        entries.emplace_back(t);
    }
    if (entries.empty())
        throw ConfigError::validation(path.string(), "word list has no entries");
    return entries;
}

PhraseMatcher::PhraseMatcher(const std::vector<std::string>& phrases) {
    for (const auto& p : phrases) add(p);
}

void PhraseMatcher::add(std::string_view phrase) {
    auto norm = normalize_phrase(phrase);
    if (norm.empty() || index_.count(norm)) return;
    const auto n = static_cast<std::size_t>(std::count(norm.begin(), norm.end(), ' ')) + 1;
    max_tokens_ = std::max(max_tokens_, n);
    index_.emplace(norm, phrases_.size());
    phrases_.push_back(std::move(norm));
}

std::vector<PhraseMatcher::Match> PhraseMatcher::find_all(const std::vector<Token>& tokens) const {
    std::vector<Match> out;
    std::string key;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        const std::size_t limit = std::min(max_tokens_, tokens.size() - i);
        std::vector<Match> here;
        key.clear();
        for (std::size_t n = 1; n <= limit; ++n) {
            if (n > 1) key.push_back(' ');
            key += tokens[i + n - 1].norm;
            if (auto it = index_.find(key); it != index_.end())
                here.push_back({i, i + n - 1, it->second});
        }
        out.insert(out.end(), here.rbegin(), here.rend());
    }
    return out;
}

bool PhraseMatcher::contains_any(const std::vector<Token>& tokens) const {
    return !find_all(tokens).empty();
}

}  // namespace litgate::text
