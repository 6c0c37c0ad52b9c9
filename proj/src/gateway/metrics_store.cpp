#include "litgate/gateway/metrics_store.hpp"

#include <fstream>

#include "litgate/gateway/json_io.hpp"

namespace litgate {

SessionMetrics summarize(const std::string& session_id, const MetricsTallies& t,
                         const SkillProfile& skill) {
    SessionMetrics m;
    m.session_id = session_id;
    m.classified_turns = t.classified_turns();
    m.label_counts = t.label_counts;
    if (m.classified_turns > 0) {
        std::array<double, 3> p{};
        for (std::size_t i = 0; i < 3; ++i)
            p[i] = static_cast<double>(t.label_counts[i]) / static_cast<double>(m.classified_turns);
        m.proportions = p;
    }
    if (t.clarity_count > 0)
        m.mean_clarity = static_cast<double>(t.clarity_sum) / static_cast<double>(t.clarity_count);
    m.interventions = t.interventions;
    m.rephrase_accepted = t.rephrase_accepted;
    m.continue_chosen = t.continue_chosen;
    m.skill = skill;
    return m;
}

void MetricsAppender::append(const std::string& session_id, std::uint64_t turn_index,
                             const SkillProfile& skill, const MetricsTallies& tallies) {
    json_io::json record = {{"session_id", session_id},
                            {"turn_index", turn_index},
                            {"skill", json_io::to_json(skill)},
                            {"tallies", json_io::to_json(tallies)}};
    const auto line = record.dump() + "\n";
    std::lock_guard lock(mutex_);
    std::ofstream out(path_, std::ios::app | std::ios::binary);
    out << line;
}

std::optional<SessionMetrics> read_latest_metrics(const std::filesystem::path& path,
                                                  const std::string& session_id) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::optional<SessionMetrics> latest;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto j = json_io::json::parse(line, nullptr, false);
        // A torn final line from a concurrent writer is skipped.
        if (j.is_discarded() || !j.is_object()) continue;
        if (j.value("session_id", std::string{}) != session_id) continue;
        latest = summarize(session_id, json_io::tallies_from_json(j.at("tallies")),
                           json_io::skill_from_json(j.at("skill")));
    }
    return latest;
}

}  // namespace litgate
