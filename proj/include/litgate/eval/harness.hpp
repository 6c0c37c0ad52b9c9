#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "litgate/eval/transcript.hpp"
#include "litgate/gateway/pipeline.hpp"

namespace litgate::eval {

struct AnnotatedTurn {
    TranscriptTurn turn;
    // Present on user turns only.
    std::optional<DisclosureReport> report;
    std::optional<ClarityAssessment> clarity;
    std::vector<Intervention> interventions;
    GuidanceLevel guidance_level = GuidanceLevel::Structured;
    bool held = false;       // pre-inference stack contained a blocking intervention
    bool rephrased = false;  // the next user turn of the session reuses this turn_index
};

// Replays every session through the same pre-inference path the gateway uses, simulating the
// per-session skill profile and transparency cooldowns. Output keeps the input order.
std::vector<AnnotatedTurn> annotate(const std::vector<TranscriptTurn>& turns,
                                    const LiteracyEngines& engines);

class NoUserTurns : public std::runtime_error {
public:
    NoUserTurns() : std::runtime_error("transcript has no user turns") {}
};

inline constexpr std::uint64_t kTrajectoryBucketWidth = 5;

struct ConditionMetrics {
    std::uint64_t sessions = 0;
    std::uint64_t user_turns = 0;
    std::array<std::uint64_t, 3> label_counts{};
    std::array<double, 3> proportions{};
    double mean_clarity = 0.0;
    // Bucket start (turn_index rounded down to the bucket width) -> mean predicted clarity.
    std::map<std::uint64_t, double> clarity_trajectory;
    InterventionCounts interventions{};
    std::uint64_t held_turns = 0;
    std::uint64_t rephrased_turns = 0;
    std::optional<double> rephrase_acceptance_rate;

    bool operator==(const ConditionMetrics&) const = default;
};

struct AgreementMetrics {
    std::uint64_t labeled_turns = 0;
    std::optional<double> label_agreement;
    // confusion[gold][predicted]
    std::array<std::array<std::uint64_t, 3>, 3> confusion{};
    std::uint64_t high_risk_as_safe = 0;
    std::uint64_t clarity_turns = 0;
    std::optional<double> clarity_mae;

    bool operator==(const AgreementMetrics&) const = default;
};

struct MetricsReport {
    std::map<Condition, ConditionMetrics> conditions;
    AgreementMetrics agreement;

    bool operator==(const MetricsReport&) const = default;
};

// Throws NoUserTurns when nothing can be measured.
MetricsReport compute_metrics(const std::vector<AnnotatedTurn>& annotated);

// Deterministic renderings: fixed key order and values rounded to 6 decimals.
std::string report_json(const MetricsReport& report);
std::string report_markdown(const MetricsReport& report);

}  // namespace litgate::eval
