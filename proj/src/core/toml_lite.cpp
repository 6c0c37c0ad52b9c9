#include "litgate/core/toml_lite.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>

#include "litgate/core/error.hpp"

namespace litgate::toml_lite {

const Value* Table::find(std::string_view key) const {
    for (const auto& [k, v] : entries)
        if (k == key) return &v;
    return nullptr;
}

const Table* Document::table(std::string_view name) const {
    auto it = tables.find(name);
    return it == tables.end() ? nullptr : &it->second;
}

const char* type_name(const Value& v) noexcept {
    switch (v.index()) {
        case 0: return "string";
        case 1: return "integer";
        case 2: return "float";
        case 3: return "boolean";
        case 4: return "array";
    }
    return "?";
}

namespace {

bool is_bare_key_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
           c == '_' || c == '-';
}

void append_utf8(std::string& out, char32_t cp) {
    if (cp < 0x80) {
        out.push_back(static_cast<char>(cp));
    } else if (cp < 0x800) {
        out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else if (cp < 0x10000) {
        out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    } else {
        out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
        out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
    }
}

class Parser {
public:
    explicit Parser(std::string_view src) : src_(src) {}

    Document run() {
        Document doc;
        doc.tables[""];
        Table* current = &doc.tables[""];
        while (!at_end()) {
            skip_ws();
            if (at_end()) break;
            const char c = peek();
            if (c == '\n') {
                advance();
                continue;
            }
            if (c == '#') {
                skip_comment();
                continue;
            }
            if (c == '[') {
                current = header(doc);
            } else {
                key_value(*current);
            }
            end_of_line();
        }
        return doc;
    }

private:
    [[noreturn]] void fail(const std::string& what) const {
        throw ConfigError::parse(what, line_, col_);
    }

    bool at_end() const { return pos_ >= src_.size(); }
    char peek(std::size_t ahead = 0) const {
        return pos_ + ahead < src_.size() ? src_[pos_ + ahead] : '\0';
    }
    void advance() {
        if (src_[pos_] == '\n') {
            ++line_;
            col_ = 1;
        } else {
            ++col_;
        }
        ++pos_;
    }
    void skip_ws() {
        while (!at_end() && (peek() == ' ' || peek() == '\t' || peek() == '\r')) advance();
    }
    void skip_comment() {
        while (!at_end() && peek() != '\n') advance();
    }
    // Whitespace, newlines and comments (inside arrays).
    void skip_blank() {
        for (;;) {
            skip_ws();
            if (peek() == '#') {
                skip_comment();
            } else if (peek() == '\n') {
                advance();
            } else {
                return;
            }
        }
    }
    void end_of_line() {
        skip_ws();
        if (peek() == '#') skip_comment();
        if (at_end()) return;
        if (peek() != '\n') fail("unexpected character '" + std::string(1, peek()) + "'");
        advance();
    }

    std::string key() {
        if (peek() == '"') return basic_string();
        if (peek() == '\'') return literal_string();
        std::string k;
        while (!at_end() && (is_bare_key_char(peek()) || peek() == '.')) {
            k.push_back(peek());
            advance();
        }
        if (k.empty()) fail("expected a key");
        return k;
    }

    Table* header(Document& doc) {
        const std::size_t header_line = line_;
        advance();
        const bool is_array = peek() == '[';
        if (is_array) advance();
        skip_ws();
        std::string name = key();
        skip_ws();
        if (peek() != ']') fail("expected ']' to close table header");
        advance();
        if (is_array) {
            if (peek() != ']') fail("expected ']]' to close array table header");
            advance();
            if (doc.tables.count(name)) fail("'" + name + "' is already a table");
            auto& vec = doc.arrays[name];
            vec.emplace_back();
            vec.back().line = header_line;
            return &vec.back();
        }
        if (doc.arrays.count(name)) fail("'" + name + "' is already an array of tables");
        auto [it, inserted] = doc.tables.try_emplace(name);
        if (!inserted) fail("duplicate table [" + name + "]");
        it->second.line = header_line;
        return &it->second;
    }

    void key_value(Table& table) {
        std::string k = key();
        skip_ws();
        if (peek() != '=') fail("expected '=' after key '" + k + "'");
        advance();
        skip_ws();
        Value v = value();
        if (table.find(k)) fail("duplicate key '" + k + "'");
        table.entries.emplace_back(std::move(k), std::move(v));
    }

    Value value() {
        const char c = peek();
        if (c == '"') return basic_string();
        if (c == '\'') return literal_string();
        if (c == '[') return string_array();
        if (src_.substr(pos_, 4) == "true") {
            for (int i = 0; i < 4; ++i) advance();
            return true;
        }
        if (src_.substr(pos_, 5) == "false") {
            for (int i = 0; i < 5; ++i) advance();
            return false;
        }
        if (c == '-' || c == '+' || (c >= '0' && c <= '9')) return number();
        if (at_end() || c == '\n') fail("missing value");
        fail("unsupported value");
    }

    Value number() {
        const std::size_t start_pos = pos_;
        std::string raw;
        while (!at_end()) {
            const char c = peek();
            if ((c >= '0' && c <= '9') || c == '-' || c == '+' || c == '.' || c == 'e' ||
                c == 'E' || c == '_') {
                if (c != '_') raw.push_back(c);
                advance();
            } else {
                break;
            }
        }
        const bool is_float = raw.find_first_of(".eE") != std::string::npos;
        const char* first = raw.data();
        if (!raw.empty() && raw.front() == '+') ++first;
        const char* last = raw.data() + raw.size();
        if (is_float) {
            double d = 0;
            auto [p, ec] = std::from_chars(first, last, d);
            if (ec != std::errc{} || p != last) fail("invalid float '" + raw + "'");
            return d;
        }
        std::int64_t n = 0;
        auto [p, ec] = std::from_chars(first, last, n);
        if (ec != std::errc{} || p != last) fail("invalid integer '" + raw + "'");
        (void)start_pos;
        return n;
    }

    std::string basic_string() {
        advance();  // opening quote
        std::string out;
        for (;;) {
            if (at_end() || peek() == '\n') fail("unterminated string");
            const char c = peek();
            if (c == '"') {
                advance();
                return out;
            }
            if (c != '\\') {
                out.push_back(c);
                advance();
                continue;
            }
            advance();
            const char e = peek();
            switch (e) {
                case '"': out.push_back('"'); break;
                case '\\': out.push_back('\\'); break;
                case 'n': out.push_back('\n'); break;
                case 't': out.push_back('\t'); break;
                case 'r': out.push_back('\r'); break;
                case 'u': {
                    advance();
                    char32_t cp = 0;
                    for (int i = 0; i < 4; ++i) {
                        const char h = peek();
                        int v;
                        if (h >= '0' && h <= '9') v = h - '0';
                        else if (h >= 'a' && h <= 'f') v = h - 'a' + 10;
                        else if (h >= 'A' && h <= 'F') v = h - 'A' + 10;
                        else fail("invalid \\u escape");
                        cp = cp * 16 + static_cast<char32_t>(v);
                        advance();
                    }
                    append_utf8(out, cp);
                    continue;
                }
                default: fail("invalid escape sequence");
            }
            advance();
        }
    }

    std::string literal_string() {
        advance();
        std::string out;
        for (;;) {
            if (at_end() || peek() == '\n') fail("unterminated string");
            if (peek() == '\'') {
                advance();
                return out;
            }
            out.push_back(peek());
            advance();
        }
    }

    StringList string_array() {
        advance();
        StringList items;
        for (;;) {
            skip_blank();
            if (peek() == ']') {
                advance();
                return items;
            }
            if (peek() == '"') items.push_back(basic_string());
            else if (peek() == '\'') items.push_back(literal_string());
            else fail("arrays may only contain strings");
            skip_blank();
            if (peek() == ',') {
                advance();
            } else if (peek() != ']') {
                fail("expected ',' or ']' in array");
            }
        }
    }

    std::string_view src_;
    std::size_t pos_ = 0;
    std::size_t line_ = 1;
    std::size_t col_ = 1;
};

}  // namespace

Document parse(std::string_view source) { return Parser(source).run(); }

std::string quote(std::string_view s) {
    std::string out = "\"";
    for (const char c : s) {
        switch (c) {
            case '"': out += "\\\""; break;
            case '\\': out += "\\\\"; break;
            case '\n': out += "\\n"; break;
            case '\t': out += "\\t"; break;
            case '\r': out += "\\r"; break;
            default:
                if (static_cast<unsigned char>(c) < 0x20) {
                    char buf[8];
                    std::snprintf(buf, sizeof buf, "\\u%04x", static_cast<unsigned>(c));
                    out += buf;
                } else {
                    out.push_back(c);
                }
        }
    }
    out.push_back('"');
    return out;
}

std::string format_key(std::string_view key) {
    bool bare = !key.empty();
    for (const char c : key) bare = bare && (is_bare_key_char(c) || c == '.');
    return bare ? std::string(key) : quote(key);
}

std::string format_list(const StringList& items) {
    std::string out = "[";
    for (std::size_t i = 0; i < items.size(); ++i) {
        if (i) out += ", ";
        out += quote(items[i]);
    }
    out += "]";
    return out;
}

std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    std::string s(buf);
    if (s.find_first_of(".eEn") == std::string::npos) s += ".0";
    return s;
}

}  // namespace litgate::toml_lite
