#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "litgate/core/types.hpp"
#include "litgate/gateway/upstream.hpp"
#include "litgate/transparency/engine.hpp"

namespace litgate {

struct MetricsTallies {
    std::array<std::uint64_t, 3> label_counts{};  // indexed by DisclosureLabel
    std::uint64_t clarity_sum = 0;
    std::uint64_t clarity_count = 0;
    InterventionCounts interventions{};
    std::uint64_t rephrase_accepted = 0;
    std::uint64_t continue_chosen = 0;

    std::uint64_t classified_turns() const noexcept {
        return label_counts[0] + label_counts[1] + label_counts[2];
    }
    void count(const std::vector<Intervention>& shown) noexcept {
        for (const auto& i : shown) ++interventions[static_cast<std::size_t>(i.kind)];
    }
    bool operator==(const MetricsTallies&) const = default;
};

// Counts-only view of one session. Proportions are absent when no turn was classified.
struct SessionMetrics {
    std::string session_id;
    std::uint64_t classified_turns = 0;
    std::array<std::uint64_t, 3> label_counts{};
    std::optional<std::array<double, 3>> proportions;
    std::optional<double> mean_clarity;
    InterventionCounts interventions{};
    std::uint64_t rephrase_accepted = 0;
    std::uint64_t continue_chosen = 0;
    SkillProfile skill;

    bool operator==(const SessionMetrics&) const = default;
};

SessionMetrics summarize(const std::string& session_id, const MetricsTallies& tallies,
                         const SkillProfile& skill);

struct PendingTurn {
    std::string pending_id;
    UserTurn original_turn;
    DisclosureReport report;
    ClarityAssessment clarity;
    std::vector<Intervention> interventions;
    std::optional<transparency::Trigger> trigger;
    std::int64_t created_at_ms = 0;
};

struct SessionState {
    std::string session_id;
    SkillProfile skill;
    transparency::CooldownState cooldowns;
    std::optional<PendingTurn> pending;
    // Number of accepted (forwarded) user turns.
    std::uint64_t next_turn_index = 0;
    MetricsTallies tallies;
    // Confirmed exchanges only; held or abandoned text never lands here.
    std::vector<ChatMessage> history;
};

}  // namespace litgate
