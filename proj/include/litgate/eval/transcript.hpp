#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "litgate/core/types.hpp"

namespace litgate::eval {

enum class Speaker : std::uint8_t { User, Assistant };
enum class Condition : std::uint8_t { Baseline, Literacy };

std::string_view to_string(Speaker speaker) noexcept;
std::string_view to_string(Condition condition) noexcept;

struct TranscriptTurn {
    std::string session_id;
    std::uint64_t turn_index = 0;
    Speaker speaker = Speaker::User;
    std::string text;
    Condition condition = Condition::Literacy;
    std::optional<DisclosureLabel> gold_label;
    std::optional<int> gold_clarity;
    std::size_t line = 0;  // 1-based line in the source file
};

class TranscriptError : public std::runtime_error {
public:
    enum class Kind { Parse, Schema };

    TranscriptError(Kind kind, std::size_t line, std::string field, const std::string& what)
        : std::runtime_error(what), kind_(kind), line_(line), field_(std::move(field)) {}

    Kind kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    Kind kind_;
    std::size_t line_;
    std::string field_;
};

// One JSON object per line; blank lines are skipped but still counted.
// Throws TranscriptError (Parse or Schema) on the first bad line.
std::vector<TranscriptTurn> parse_transcript(std::istream& in);
// Also throws TranscriptError(Parse, 0, "path") when the file cannot be opened.
std::vector<TranscriptTurn> load_transcript(const std::filesystem::path& path);

}  // namespace litgate::eval
