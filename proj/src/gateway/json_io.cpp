#include "litgate/gateway/json_io.hpp"

#include <stdexcept>

namespace litgate::json_io {

json to_json(const Intervention& i) {
    json j;
    j["kind"] = std::string(to_string(i.kind));
    j["message"] = i.message;
    j["blocking"] = i.blocking;
    j["options"] = json::array();
    for (const auto& o : i.options) {
        json opt = {{"label", o.label}, {"action", std::string(to_string(o.action))}};
        if (o.action == OptionAction::RephraseWith) opt["text"] = o.text;
        j["options"].push_back(std::move(opt));
    }
    if (i.kind == InterventionKind::CrisisReferral) {
        j["referral_links"] = json::array();
        for (const auto& l : i.referral_links)
            j["referral_links"].push_back({{"name", l.name}, {"url", l.url}, {"region", l.region}});
    }
    return j;
}

json to_json(const std::vector<Intervention>& interventions) {
    json arr = json::array();
    for (const auto& i : interventions) arr.push_back(to_json(i));
    return arr;
}

json to_json(const SensitiveSpan& s) {
    return {{"start", s.start},
            {"end", s.end},
            {"category", std::string(to_string(s.category))},
            {"matched_text", s.matched_text},
            {"rule_id", s.rule_id}};
}

json to_json(const DisclosureReport& r) {
    json spans = json::array();
    for (const auto& s : r.spans) spans.push_back(to_json(s));
    return {{"label", std::string(to_string(r.label))},
            {"spans", std::move(spans)},
            {"rationale", r.rationale},
            {"redacted_text", r.redacted_text},
            {"fired_rules", r.fired_rules}};
}

json to_json(const ClarityAssessment& a) {
    return {{"score", a.score},
            {"features",
             {{"has_topic", a.features.has_topic},
              {"has_goal", a.features.has_goal},
              {"specificity_hits", a.features.specificity_hits},
              {"length_band", std::string(to_string(a.features.length_band))},
              {"ambiguity_flags", a.features.ambiguity_flags}}},
            {"hints", a.hints},
            {"rephrase_options", a.rephrase_options},
            {"topics_detected", a.topics_detected}};
}

json to_json(const SkillProfile& s) {
    return {{"rolling_clarity", s.rolling_clarity},
            {"turns_observed", s.turns_observed},
            {"guidance_level", std::string(to_string(s.guidance_level))}};
}

json interventions_counts_json(const InterventionCounts& counts) {
    json j;
    for (auto k : kAllInterventionKinds)
        j[std::string(to_string(k))] = counts[static_cast<std::size_t>(k)];
    return j;
}

json to_json(const MetricsTallies& t) {
    json labels;
    for (auto l : kAllLabels) labels[std::string(to_string(l))] = t.label_counts[static_cast<std::size_t>(l)];
    return {{"label_counts", std::move(labels)},
            {"clarity_sum", t.clarity_sum},
            {"clarity_count", t.clarity_count},
            {"interventions", interventions_counts_json(t.interventions)},
            {"rephrase_accepted", t.rephrase_accepted},
            {"continue_chosen", t.continue_chosen}};
}

json to_json(const SessionMetrics& m) {
    json labels;
    for (auto l : kAllLabels) labels[std::string(to_string(l))] = m.label_counts[static_cast<std::size_t>(l)];
    json j = {{"session_id", m.session_id},
              {"classified_turns", m.classified_turns},
              {"label_counts", std::move(labels)},
              {"interventions", interventions_counts_json(m.interventions)},
              {"rephrase_accepted", m.rephrase_accepted},
              {"continue_chosen", m.continue_chosen},
              {"skill", to_json(m.skill)}};
    if (m.proportions) {
        json p;
        for (auto l : kAllLabels)
            p[std::string(to_string(l))] = (*m.proportions)[static_cast<std::size_t>(l)];
        j["proportions"] = std::move(p);
    } else {
        j["proportions"] = "no data";
    }
    j["mean_clarity"] = m.mean_clarity ? json(*m.mean_clarity) : json("no data");
    return j;
}

json to_json(const TurnOutcome& o) {
    json j;
    if (o.kind == OutcomeKind::Forwarded) {
        j["outcome"] = "forwarded";
        j["assistant_text"] = o.assistant_text;
    } else {
        j["outcome"] = "held";
        j["pending_id"] = o.pending_id;
    }
    j["interventions"] = to_json(o.interventions);
    j["turn_index"] = o.turn_index;
    j["label"] = std::string(to_string(o.label));
    j["clarity"] = {{"score", o.clarity_score},
                    {"guidance_level", std::string(to_string(o.guidance_level))}};
    return j;
}

json to_json(const GatewayError& e) {
    json j = {{"error", std::string(to_string(e.code()))}, {"message", e.what()}};
    if (e.code() == GatewayError::Code::UpstreamError) {
        j["status"] = e.upstream_status();
        j["retriable"] = e.retriable();
        j["timed_out"] = e.timed_out();
    }
    return j;
}

namespace {

GuidanceLevel parse_level(const std::string& s) {
    for (auto l : {GuidanceLevel::Structured, GuidanceLevel::Moderate, GuidanceLevel::Subtle})
        if (to_string(l) == s) return l;
    throw std::invalid_argument("unknown guidance level '" + s + "'");
}

}  // namespace

SkillProfile skill_from_json(const json& j) {
    try {
        SkillProfile s;
        s.rolling_clarity = j.at("rolling_clarity").get<double>();
        s.turns_observed = j.at("turns_observed").get<std::uint64_t>();
        s.guidance_level = parse_level(j.at("guidance_level").get<std::string>());
        return s;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad skill record: ") + e.what());
    }
}

MetricsTallies tallies_from_json(const json& j) {
    try {
        MetricsTallies t;
        for (auto l : kAllLabels)
            t.label_counts[static_cast<std::size_t>(l)] =
                j.at("label_counts").at(std::string(to_string(l))).get<std::uint64_t>();
        t.clarity_sum = j.at("clarity_sum").get<std::uint64_t>();
        t.clarity_count = j.at("clarity_count").get<std::uint64_t>();
        for (auto k : kAllInterventionKinds)
            t.interventions[static_cast<std::size_t>(k)] =
                j.at("interventions").at(std::string(to_string(k))).get<std::uint64_t>();
        t.rephrase_accepted = j.at("rephrase_accepted").get<std::uint64_t>();
        t.continue_chosen = j.at("continue_chosen").get<std::uint64_t>();
        return t;
    } catch (const json::exception& e) {
        throw std::invalid_argument(std::string("bad tallies record: ") + e.what());
    }
}

}  // namespace litgate::json_io
