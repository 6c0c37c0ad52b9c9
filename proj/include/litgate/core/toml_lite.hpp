#pragma once

// A TOML subset sufficient for the gateway configuration file:
//   [section] and [section.sub] headers, [[array]] table arrays,
//   key = value with basic/literal strings, integers, floats, booleans and
//   (possibly multi-line) arrays of strings. '#' comments.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

namespace litgate::toml_lite {

using StringList = std::vector<std::string>;
using Value = std::variant<std::string, std::int64_t, double, bool, StringList>;

struct Table {
    std::vector<std::pair<std::string, Value>> entries;
    std::size_t line = 0;  // header line, 0 for the root table

    const Value* find(std::string_view key) const;
};

struct Document {
    std::map<std::string, Table, std::less<>> tables;  // "" is the root table
    std::map<std::string, std::vector<Table>, std::less<>> arrays;

    const Table* table(std::string_view name) const;
};

// Throws ConfigError(ParseError) with 1-based line and column.
Document parse(std::string_view source);

// Writer helpers producing text the parser reads back unchanged.
std::string quote(std::string_view s);
std::string format_key(std::string_view key);
std::string format_list(const StringList& items);
std::string format_double(double v);

const char* type_name(const Value& v) noexcept;

}  // namespace litgate::toml_lite
