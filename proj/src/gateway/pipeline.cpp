#include "litgate/gateway/pipeline.hpp"

#include <algorithm>

namespace litgate {

std::string_view to_string(Stage stage) noexcept {
    switch (stage) {
        case Stage::Disclosure: return "disclosure";
        case Stage::Clarity: return "clarity";
        case Stage::DisclosureInterventions: return "disclosure_interventions";
        case Stage::TransparencyTrigger: return "transparency_trigger";
        case Stage::Upstream: return "upstream";
        case Stage::TransparencyEmit: return "transparency_emit";
    }
    return "?";
}

std::shared_ptr<const LiteracyEngines> LiteracyEngines::load(const GatewayConfig& config) {
    validate(config);
    return std::make_shared<const LiteracyEngines>(LiteracyEngines{
        config, disclosure::DisclosureMonitor::from_config(config),
        coach::PromptCoach::from_config(config), transparency::TriggerLexicon::from_config(config)});
}

bool PreInference::blocking() const noexcept {
    return std::any_of(interventions.begin(), interventions.end(),
                       [](const Intervention& i) { return i.blocking; });
}

std::vector<Intervention> hint_interventions(const ClarityAssessment& clarity) {
    std::vector<Intervention> out;
    for (const auto& hint : clarity.hints) {
        Intervention i;
        i.kind = InterventionKind::PromptHint;
        i.message = hint;
        i.blocking = false;
        if (out.empty()) {
            for (const auto& option : clarity.rephrase_options)
                i.options.push_back({"Try this wording", OptionAction::RephraseWith, option});
        }
        out.push_back(std::move(i));
    }
    return out;
}

PreInference run_pre_inference(const LiteracyEngines& engines, const UserTurn& turn,
                               const SkillProfile& skill, const StageObserver& observer) {
    auto notify = [&](Stage s) {
        if (observer) observer(s);
    };
    PreInference pre;
    pre.report = engines.monitor.build_report(turn.text);
    notify(Stage::Disclosure);
    pre.clarity = engines.coach.coach(turn.text, skill);
    notify(Stage::Clarity);
    pre.interventions = disclosure::interventions_for(pre.report, engines.config);
    notify(Stage::DisclosureInterventions);
    pre.trigger = transparency::detect_trigger(turn, pre.report, engines.triggers);
    notify(Stage::TransparencyTrigger);
    auto hints = hint_interventions(pre.clarity);
    pre.interventions.insert(pre.interventions.end(), std::make_move_iterator(hints.begin()),
                             std::make_move_iterator(hints.end()));
    return pre;
}

}  // namespace litgate
