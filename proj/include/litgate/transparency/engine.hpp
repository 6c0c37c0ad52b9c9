#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "litgate/core/config.hpp"
#include "litgate/core/text.hpp"
#include "litgate/core/types.hpp"

namespace litgate::transparency {

enum class TransparencyTopic : std::uint8_t { DataCollected, DataUse, DataNotStored, SystemBehavior };

inline constexpr std::array<TransparencyTopic, 4> kAllTopics = {
    TransparencyTopic::DataCollected, TransparencyTopic::DataUse, TransparencyTopic::DataNotStored,
    TransparencyTopic::SystemBehavior};

std::string_view to_string(TransparencyTopic topic) noexcept;
// Key of the topic's template in the [transparency] config section.
std::string_view template_key(TransparencyTopic topic) noexcept;

struct Trigger {
    TransparencyTopic topic = TransparencyTopic::DataUse;
    // Direct user questions bypass the cooldown; label-driven triggers do not.
    bool explicit_question = false;

    bool operator==(const Trigger&) const = default;
};

class TriggerLexicon {
public:
    TriggerLexicon(const std::vector<std::string>& privacy_questions,
                   const std::vector<std::string>& system_questions)
        : privacy_(privacy_questions), system_(system_questions) {}
    static TriggerLexicon from_config(const GatewayConfig& config);

    bool asks_about_privacy(const std::vector<text::Token>& tokens) const {
        return privacy_.contains_any(tokens);
    }
    bool asks_about_system(const std::vector<text::Token>& tokens) const {
        return system_.contains_any(tokens);
    }

private:
    text::PhraseMatcher privacy_;
    text::PhraseMatcher system_;
};

// Privacy question -> DataUse; otherwise a non-Safe label -> DataNotStored; otherwise a
// question about the assistant -> SystemBehavior; otherwise nothing.
std::optional<Trigger> detect_trigger(const UserTurn& turn, const DisclosureReport& report,
                                      const TriggerLexicon& lexicon);

struct CooldownState {
    std::array<std::optional<std::uint64_t>, 4> last_note_turn{};
    std::optional<std::uint64_t> global_last_note_turn;

    bool operator==(const CooldownState&) const = default;
};

struct EmitResult {
    std::optional<Intervention> note;
    CooldownState cooldown;
};

// Emits a non-blocking note when a trigger is present and either it is an explicit question
// or at least cooldown_turns have passed since the previous note.
EmitResult maybe_emit(const std::optional<Trigger>& trigger, const CooldownState& cooldown,
                      std::uint64_t turn_index, const GatewayConfig& config);

// Template for the topic with {model} filled in.
std::string render_note(TransparencyTopic topic, const GatewayConfig& config);

// Every topic's note, in topic order.
std::vector<Intervention> transparency_page(const GatewayConfig& config);

}  // namespace litgate::transparency
