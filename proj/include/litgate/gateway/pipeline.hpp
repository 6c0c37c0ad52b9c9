#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

#include "litgate/coach/coach.hpp"
#include "litgate/core/config.hpp"
#include "litgate/core/types.hpp"
#include "litgate/disclosure/monitor.hpp"
#include "litgate/transparency/engine.hpp"

namespace litgate {

// The three literacy modules, loaded once and shared read-only.
struct LiteracyEngines {
    GatewayConfig config;
    disclosure::DisclosureMonitor monitor;
    coach::PromptCoach coach;
    transparency::TriggerLexicon triggers;

    // Loads every lexicon named in the config; throws ConfigError on bad files.
    static std::shared_ptr<const LiteracyEngines> load(const GatewayConfig& config);
};

enum class Stage {
    Disclosure,
    Clarity,
    DisclosureInterventions,
    TransparencyTrigger,
    Upstream,
    TransparencyEmit,
};

std::string_view to_string(Stage stage) noexcept;

using StageObserver = std::function<void(Stage)>;

struct PreInference {
    DisclosureReport report;
    ClarityAssessment clarity;
    // DisclosureReflection, CrisisReferral, then PromptHint entries.
    std::vector<Intervention> interventions;
    std::optional<transparency::Trigger> trigger;

    bool blocking() const noexcept;
};

// Report, clarity with hints, disclosure interventions and transparency trigger, in that order.
PreInference run_pre_inference(const LiteracyEngines& engines, const UserTurn& turn,
                               const SkillProfile& skill, const StageObserver& observer = {});

// PromptHint interventions for an assessment; rephrase options ride on the first hint.
std::vector<Intervention> hint_interventions(const ClarityAssessment& clarity);

}  // namespace litgate
