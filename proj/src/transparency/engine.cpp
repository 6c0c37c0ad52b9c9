#include "litgate/transparency/engine.hpp"

namespace litgate::transparency {

std::string_view to_string(TransparencyTopic topic) noexcept {
    switch (topic) {
        case TransparencyTopic::DataCollected: return "data_collected";
        case TransparencyTopic::DataUse: return "data_use";
        case TransparencyTopic::DataNotStored: return "data_not_stored";
        case TransparencyTopic::SystemBehavior: return "system_behavior";
    }
    return "?";
}

std::string_view template_key(TransparencyTopic topic) noexcept {
    switch (topic) {
        case TransparencyTopic::DataCollected: return kTemplateDataCollected;
        case TransparencyTopic::DataUse: return kTemplateDataUse;
        case TransparencyTopic::DataNotStored: return kTemplateDataNotStored;
        case TransparencyTopic::SystemBehavior: return kTemplateSystemBehavior;
    }
    return {};
}

TriggerLexicon TriggerLexicon::from_config(const GatewayConfig& config) {
    return TriggerLexicon(text::load_word_list(config.lexicons.privacy_questions),
                          text::load_word_list(config.lexicons.system_questions));
}

std::optional<Trigger> detect_trigger(const UserTurn& turn, const DisclosureReport& report,
                                      const TriggerLexicon& lexicon) {
    const auto tokens = text::tokenize(turn.text);
    if (lexicon.asks_about_privacy(tokens)) return Trigger{TransparencyTopic::DataUse, true};
    if (report.label != DisclosureLabel::Safe)
        return Trigger{TransparencyTopic::DataNotStored, false};
    if (lexicon.asks_about_system(tokens)) return Trigger{TransparencyTopic::SystemBehavior, true};
    return std::nullopt;
}

std::string render_note(TransparencyTopic topic, const GatewayConfig& config) {
    auto it = config.transparency_templates.find(std::string(template_key(topic)));
    std::string out = it == config.transparency_templates.end() ? std::string{} : it->second;
    constexpr std::string_view slot = "{model}";
    for (auto pos = out.find(slot); pos != std::string::npos; pos = out.find(slot, pos)) {
        out.replace(pos, slot.size(), config.upstream.model);
        pos += config.upstream.model.size();
    }
    return out;
}

EmitResult maybe_emit(const std::optional<Trigger>& trigger, const CooldownState& cooldown,
                      std::uint64_t turn_index, const GatewayConfig& config) {
    EmitResult result{std::nullopt, cooldown};
    if (!trigger) return result;
    const auto gap_ok = !cooldown.global_last_note_turn ||
                        turn_index >= *cooldown.global_last_note_turn +
                                          static_cast<std::uint64_t>(config.limits.cooldown_turns);
    if (!gap_ok && !trigger->explicit_question) return result;

    Intervention note;
    note.kind = InterventionKind::TransparencyNote;
    note.message = render_note(trigger->topic, config);
    note.blocking = false;
    result.note = std::move(note);
    result.cooldown.last_note_turn[static_cast<std::size_t>(trigger->topic)] = turn_index;
    result.cooldown.global_last_note_turn = turn_index;
    return result;
}

std::vector<Intervention> transparency_page(const GatewayConfig& config) {
    std::vector<Intervention> out;
    for (auto topic : kAllTopics) {
        Intervention note;
        note.kind = InterventionKind::TransparencyNote;
        note.message = render_note(topic, config);
        out.push_back(std::move(note));
    }
    return out;
}

}  // namespace litgate::transparency
