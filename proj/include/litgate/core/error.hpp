#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace litgate {

// Raised while loading or validating configuration, rule sets and word lists.
class ConfigError : public std::runtime_error {
public:
    enum class Kind { MissingFile, ParseError, ValidationError };

    ConfigError(Kind kind, std::string message, std::string field = {},
                std::size_t line = 0, std::size_t column = 0);

    Kind kind() const noexcept { return kind_; }
    // Name of the violated invariant for ValidationError, offending key otherwise.
    const std::string& field() const noexcept { return field_; }
    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

    static ConfigError missing_file(const std::string& path);
    static ConfigError parse(const std::string& what, std::size_t line, std::size_t column);
    static ConfigError validation(const std::string& field, const std::string& what);

private:
    Kind kind_;
    std::string field_;
    std::size_t line_;
    std::size_t column_;
};

// A span does not fit the text it claims to describe.
class SpanOutOfBounds : public std::out_of_range {
public:
    using std::out_of_range::out_of_range;
};

const char* to_string(ConfigError::Kind kind) noexcept;

}  // namespace litgate
