#include "litgate/eval/transcript.hpp"

#include <fstream>
#include <map>

#include <json.hpp>

namespace litgate::eval {

std::string_view to_string(Speaker speaker) noexcept {
    return speaker == Speaker::User ? "user" : "assistant";
}

std::string_view to_string(Condition condition) noexcept {
    return condition == Condition::Baseline ? "baseline" : "literacy";
}

namespace {

using nlohmann::json;

[[noreturn]] void schema_error(std::size_t line, const std::string& field, const std::string& why) {
    throw TranscriptError(TranscriptError::Kind::Schema, line, field,
                          "line " + std::to_string(line) + ": field '" + field + "' " + why);
}

const json& require(const json& obj, const char* field, std::size_t line) {
    auto it = obj.find(field);
    if (it == obj.end()) schema_error(line, field, "is missing");
    return *it;
}

std::string require_string(const json& obj, const char* field, std::size_t line) {
    const auto& v = require(obj, field, line);
    if (!v.is_string()) schema_error(line, field, "must be a string");
    return v.get<std::string>();
}

TranscriptTurn parse_turn(const json& obj, std::size_t line) {
    TranscriptTurn t;
    t.line = line;
    t.session_id = require_string(obj, "session_id", line);
    if (t.session_id.empty()) schema_error(line, "session_id", "must not be empty");

    const auto& index = require(obj, "turn_index", line);
    if (!index.is_number_integer() || index.get<std::int64_t>() < 0)
        schema_error(line, "turn_index", "must be a non-negative integer");
    t.turn_index = index.get<std::uint64_t>();

    const auto speaker = require_string(obj, "speaker", line);
    if (speaker == "user")
        t.speaker = Speaker::User;
    else if (speaker == "assistant")
        t.speaker = Speaker::Assistant;
    else
        schema_error(line, "speaker", "must be \"user\" or \"assistant\"");

    t.text = require_string(obj, "text", line);

    const auto condition = require_string(obj, "condition", line);
    if (condition == "baseline")
        t.condition = Condition::Baseline;
    else if (condition == "literacy")
        t.condition = Condition::Literacy;
    else
        schema_error(line, "condition", "must be \"baseline\" or \"literacy\"");

    if (auto it = obj.find("gold_label"); it != obj.end() && !it->is_null()) {
        if (t.speaker != Speaker::User) schema_error(line, "gold_label", "is only allowed on user turns");
        if (!it->is_string()) schema_error(line, "gold_label", "must be a string");
        t.gold_label = parse_label(it->get<std::string>());
        if (!t.gold_label) schema_error(line, "gold_label", "must be safe, personal or high_risk");
    }
    if (auto it = obj.find("gold_clarity"); it != obj.end() && !it->is_null()) {
        if (t.speaker != Speaker::User)
            schema_error(line, "gold_clarity", "is only allowed on user turns");
        if (!it->is_number_integer()) schema_error(line, "gold_clarity", "must be an integer");
        const auto v = it->get<std::int64_t>();
        if (v < 1 || v > 5) schema_error(line, "gold_clarity", "must be within 1..5");
        t.gold_clarity = static_cast<int>(v);
    }
    return t;
}

}  // namespace

std::vector<TranscriptTurn> parse_transcript(std::istream& in) {
    std::vector<TranscriptTurn> turns;
    std::map<std::string, Condition, std::less<>> session_condition;
    std::string text;
    std::size_t line = 0;
    while (std::getline(in, text)) {
        ++line;
        if (!text.empty() && text.back() == '\r') text.pop_back();
        if (text.find_first_not_of(" \t") == std::string::npos) continue;
        json obj;
        try {
            obj = json::parse(text);
        } catch (const json::parse_error& e) {
            throw TranscriptError(TranscriptError::Kind::Parse, line, {},
                                  "line " + std::to_string(line) + ": invalid JSON: " + e.what());
        }
        if (!obj.is_object())
            throw TranscriptError(TranscriptError::Kind::Parse, line, {},
                                  "line " + std::to_string(line) + ": expected a JSON object");
        auto turn = parse_turn(obj, line);
        auto [it, inserted] = session_condition.emplace(turn.session_id, turn.condition);
        if (!inserted && it->second != turn.condition)
            schema_error(line, "condition",
                         "changes within session '" + turn.session_id + "' (was " +
                             std::string(to_string(it->second)) + ")");
        turns.push_back(std::move(turn));
    }
    return turns;
}

std::vector<TranscriptTurn> load_transcript(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw TranscriptError(TranscriptError::Kind::Parse, 0, "path",
                              "cannot open transcript '" + path.string() + "'");
    return parse_transcript(in);
}

}  // namespace litgate::eval
