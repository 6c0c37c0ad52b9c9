#include "litgate/eval/harness.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>


namespace litgate::eval {

namespace {

struct SessionSim {
    SkillProfile skill;
    transparency::CooldownState cooldowns;
};

}  // namespace

std::vector<AnnotatedTurn> annotate(const std::vector<TranscriptTurn>& turns,
                                    const LiteracyEngines& engines) {
    std::vector<AnnotatedTurn> out;
    out.reserve(turns.size());
    for (const auto& t : turns) out.push_back(AnnotatedTurn{t, {}, {}, {}, {}, false, false});

    // Index of the next user turn in the same session, for the rephrase check.
    std::map<std::string, std::vector<std::size_t>, std::less<>> user_turns_by_session;
    for (std::size_t i = 0; i < out.size(); ++i)
        if (out[i].turn.speaker == Speaker::User)
            user_turns_by_session[out[i].turn.session_id].push_back(i);

    for (auto& [session, indices] : user_turns_by_session) {
        SessionSim sim;
        for (std::size_t k = 0; k < indices.size(); ++k) {
            auto& a = out[indices[k]];
            const UserTurn turn{a.turn.session_id, a.turn.turn_index, a.turn.text, 0};
            auto pre = run_pre_inference(engines, turn, sim.skill);
            a.guidance_level = sim.skill.guidance_level;
            a.held = pre.blocking();
            a.rephrased = k + 1 < indices.size() &&
                          out[indices[k + 1]].turn.turn_index == a.turn.turn_index;
            a.interventions = std::move(pre.interventions);
            // A rephrased turn never reached the model; anything else is treated as sent.
            if (!a.rephrased) {
                auto emitted =
                    transparency::maybe_emit(pre.trigger, sim.cooldowns, turn.turn_index, engines.config);
                if (emitted.note) a.interventions.push_back(std::move(*emitted.note));
                sim.cooldowns = emitted.cooldown;
                sim.skill = engines.coach.update(sim.skill, pre.clarity.score);
            }
            a.report = std::move(pre.report);
            a.clarity = std::move(pre.clarity);
        }
    }
    return out;
}

MetricsReport compute_metrics(const std::vector<AnnotatedTurn>& annotated) {
    struct Acc {
        std::map<std::string, bool, std::less<>> sessions;
        std::uint64_t clarity_sum = 0;
        std::map<std::uint64_t, std::pair<std::uint64_t, std::uint64_t>> buckets;  // sum, count
    };
    MetricsReport report;
    std::map<Condition, Acc> acc;
    std::uint64_t agree = 0;
    std::uint64_t abs_err_sum = 0;

    for (const auto& a : annotated) {
        if (a.turn.speaker != Speaker::User || !a.report || !a.clarity) continue;
        auto& m = report.conditions[a.turn.condition];
        auto& c = acc[a.turn.condition];
        c.sessions[a.turn.session_id] = true;
        ++m.user_turns;
        const auto predicted = a.report->label;
        ++m.label_counts[static_cast<std::size_t>(predicted)];
        const auto score = static_cast<std::uint64_t>(a.clarity->score);
        c.clarity_sum += score;
        auto& bucket = c.buckets[a.turn.turn_index / kTrajectoryBucketWidth * kTrajectoryBucketWidth];
        bucket.first += score;
        ++bucket.second;
        for (const auto& i : a.interventions) ++m.interventions[static_cast<std::size_t>(i.kind)];
        if (a.held) ++m.held_turns;
        if (a.held && a.rephrased) ++m.rephrased_turns;

        if (a.turn.gold_label) {
            auto& ag = report.agreement;
            ++ag.labeled_turns;
            const auto gold = *a.turn.gold_label;
            ++ag.confusion[static_cast<std::size_t>(gold)][static_cast<std::size_t>(predicted)];
            if (gold == predicted) ++agree;
            if (gold == DisclosureLabel::HighRisk && predicted == DisclosureLabel::Safe)
                ++ag.high_risk_as_safe;
        }
        if (a.turn.gold_clarity) {
            ++report.agreement.clarity_turns;
            abs_err_sum += static_cast<std::uint64_t>(std::abs(*a.turn.gold_clarity - a.clarity->score));
        }
    }
    if (report.conditions.empty()) throw NoUserTurns();

    for (auto& [condition, m] : report.conditions) {
        const auto& c = acc[condition];
        m.sessions = c.sessions.size();
        const auto n = static_cast<double>(m.user_turns);
        for (std::size_t i = 0; i < 3; ++i)
            m.proportions[i] = static_cast<double>(m.label_counts[i]) / n;
        m.mean_clarity = static_cast<double>(c.clarity_sum) / n;
        for (const auto& [start, sc] : c.buckets)
            m.clarity_trajectory[start] = static_cast<double>(sc.first) / static_cast<double>(sc.second);
        if (m.held_turns > 0)
            m.rephrase_acceptance_rate =
                static_cast<double>(m.rephrased_turns) / static_cast<double>(m.held_turns);
    }
    auto& ag = report.agreement;
    if (ag.labeled_turns > 0)
        ag.label_agreement = static_cast<double>(agree) / static_cast<double>(ag.labeled_turns);
    if (ag.clarity_turns > 0)
        ag.clarity_mae = static_cast<double>(abs_err_sum) / static_cast<double>(ag.clarity_turns);
    return report;
}

namespace {

using ordered_json = nlohmann::ordered_json;

double round6(double v) { return std::round(v * 1e6) / 1e6; }

ordered_json optional_number(const std::optional<double>& v) {
    return v ? ordered_json(round6(*v)) : ordered_json(nullptr);
}

std::string fixed6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6f", round6(v));
    return buf;
}

std::string fixed6(const std::optional<double>& v) { return v ? fixed6(*v) : "n/a"; }

std::string bucket_name(std::uint64_t start) {
    return std::to_string(start) + "-" + std::to_string(start + kTrajectoryBucketWidth - 1);
}

}  // namespace

std::string report_json(const MetricsReport& report) {
    ordered_json root;
    ordered_json conditions = ordered_json::object();
    for (const auto& [condition, m] : report.conditions) {
        ordered_json c;
        c["sessions"] = m.sessions;
        c["user_turns"] = m.user_turns;
        ordered_json counts, props;
        for (auto l : kAllLabels) {
            counts[std::string(to_string(l))] = m.label_counts[static_cast<std::size_t>(l)];
            props[std::string(to_string(l))] = round6(m.proportions[static_cast<std::size_t>(l)]);
        }
        c["label_counts"] = counts;
        c["proportions"] = props;
        c["mean_clarity"] = round6(m.mean_clarity);
        ordered_json traj = ordered_json::array();
        for (const auto& [start, mean] : m.clarity_trajectory)
            traj.push_back({{"turns", bucket_name(start)}, {"mean_clarity", round6(mean)}});
        c["clarity_trajectory"] = traj;
        ordered_json interventions;
        for (auto k : kAllInterventionKinds)
            interventions[std::string(to_string(k))] = m.interventions[static_cast<std::size_t>(k)];
        c["interventions"] = interventions;
        c["held_turns"] = m.held_turns;
        c["rephrased_turns"] = m.rephrased_turns;
        c["rephrase_acceptance_rate"] = optional_number(m.rephrase_acceptance_rate);
        conditions[std::string(to_string(condition))] = c;
    }
    root["conditions"] = conditions;

    const auto& ag = report.agreement;
    ordered_json agreement;
    agreement["labeled_turns"] = ag.labeled_turns;
    agreement["label_agreement"] = optional_number(ag.label_agreement);
    ordered_json confusion;
    for (auto gold : kAllLabels) {
        ordered_json row;
        for (auto pred : kAllLabels)
            row[std::string(to_string(pred))] =
                ag.confusion[static_cast<std::size_t>(gold)][static_cast<std::size_t>(pred)];
        confusion[std::string(to_string(gold))] = row;
    }
    agreement["confusion"] = confusion;
    agreement["high_risk_as_safe"] = ag.high_risk_as_safe;
    agreement["clarity_turns"] = ag.clarity_turns;
    agreement["clarity_mae"] = optional_number(ag.clarity_mae);
    root["agreement"] = agreement;
    return root.dump(2) + "\n";
}

std::string report_markdown(const MetricsReport& report) {
    std::string md = "# Transcript metrics\n\n## Disclosure proportions\n\n";
    md += "| condition | sessions | user turns | safe | personal | high_risk | mean clarity |\n";
    md += "|---|---|---|---|---|---|---|\n";
    for (const auto& [condition, m] : report.conditions) {
        md += "| " + std::string(to_string(condition)) + " | " + std::to_string(m.sessions) + " | " +
              std::to_string(m.user_turns);
        for (double p : m.proportions) md += " | " + fixed6(p);
        md += " | " + fixed6(m.mean_clarity) + " |\n";
    }

    md += "\n## Clarity trajectory\n\n| condition | turns | mean clarity |\n|---|---|---|\n";
    for (const auto& [condition, m] : report.conditions)
        for (const auto& [start, mean] : m.clarity_trajectory)
            md += "| " + std::string(to_string(condition)) + " | " + bucket_name(start) + " | " +
                  fixed6(mean) + " |\n";

    md += "\n## Interventions\n\n| condition";
    for (auto k : kAllInterventionKinds) md += " | " + std::string(to_string(k));
    md += " | held | rephrased | acceptance rate |\n|---";
    for (std::size_t i = 0; i < kAllInterventionKinds.size() + 3; ++i) md += "|---";
    md += "|\n";
    for (const auto& [condition, m] : report.conditions) {
        md += "| " + std::string(to_string(condition));
        for (auto n : m.interventions) md += " | " + std::to_string(n);
        md += " | " + std::to_string(m.held_turns) + " | " + std::to_string(m.rephrased_turns) +
              " | " + fixed6(m.rephrase_acceptance_rate) + " |\n";
    }

    const auto& ag = report.agreement;
    md += "\n## Agreement with gold labels\n\n";
    md += "- labeled turns: " + std::to_string(ag.labeled_turns) + "\n";
    md += "- label agreement: " + fixed6(ag.label_agreement) + "\n";
    md += "- high_risk predicted as safe: " + std::to_string(ag.high_risk_as_safe) + "\n";
    md += "- clarity turns: " + std::to_string(ag.clarity_turns) + "\n";
    md += "- clarity MAE: " + fixed6(ag.clarity_mae) + "\n\n";
    md += "| gold \\ predicted | safe | personal | high_risk |\n|---|---|---|---|\n";
    for (auto gold : kAllLabels) {
        md += "| " + std::string(to_string(gold));
        for (auto pred : kAllLabels)
            md += " | " + std::to_string(ag.confusion[static_cast<std::size_t>(gold)]
                                                     [static_cast<std::size_t>(pred)]);
        md += " |\n";
    }
    return md;
}

}  // namespace litgate::eval
