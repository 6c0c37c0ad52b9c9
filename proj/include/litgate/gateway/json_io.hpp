#pragma once

#include <json.hpp>

#include "litgate/core/types.hpp"
#include "litgate/gateway/gateway.hpp"
#include "litgate/gateway/session.hpp"

// JSON shapes of the local HTTP API and the metrics file.
namespace litgate::json_io {

using json = nlohmann::json;

json to_json(const Intervention& intervention);
json to_json(const std::vector<Intervention>& interventions);
json to_json(const SensitiveSpan& span);
json to_json(const DisclosureReport& report);
json to_json(const ClarityAssessment& assessment);
json to_json(const SkillProfile& skill);
json to_json(const MetricsTallies& tallies);
json to_json(const SessionMetrics& metrics);
json to_json(const TurnOutcome& outcome);
json to_json(const GatewayError& error);

json interventions_counts_json(const InterventionCounts& counts);

// Throws std::invalid_argument on malformed input.
SkillProfile skill_from_json(const json& j);
MetricsTallies tallies_from_json(const json& j);

}  // namespace litgate::json_io
