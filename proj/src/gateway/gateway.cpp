#include "litgate/gateway/gateway.hpp"

#include <chrono>
#include <cstdio>
#include <random>

#include "litgate/core/text.hpp"

namespace litgate {

GatewayError::GatewayError(const UpstreamError& upstream)
    : std::runtime_error(upstream.what()),
      code_(Code::UpstreamError),
      upstream_status_(upstream.status()),
      retriable_(upstream.retriable()),
      timed_out_(upstream.timed_out()) {}

int GatewayError::http_status() const noexcept {
    switch (code_) {
        case Code::SessionBusy: return 409;
        case Code::EmptyInput: return 422;
        case Code::UpstreamError: return 502;
        case Code::NoPending: return 404;
        case Code::PendingIdMismatch: return 409;
        case Code::ContinueForbidden: return 403;
        case Code::UnknownSession: return 404;
    }
    return 500;
}

std::string_view to_string(GatewayError::Code code) noexcept {
    switch (code) {
        case GatewayError::Code::SessionBusy: return "SessionBusy";
        case GatewayError::Code::EmptyInput: return "EmptyInput";
        case GatewayError::Code::UpstreamError: return "UpstreamError";
        case GatewayError::Code::NoPending: return "NoPending";
        case GatewayError::Code::PendingIdMismatch: return "PendingIdMismatch";
        case GatewayError::Code::ContinueForbidden: return "ContinueForbidden";
        case GatewayError::Code::UnknownSession: return "UnknownSession";
    }
    return "?";
}

namespace {

std::string random_id() {
    static std::mutex mutex;
    static std::mt19937_64 rng{std::random_device{}()};
    std::lock_guard lock(mutex);
    char buf[33];
    std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(rng()),
                  static_cast<unsigned long long>(rng()));
    return buf;
}

std::int64_t system_ms() {
    using namespace std::chrono;
    return duration_cast<milliseconds>(system_clock::now().time_since_epoch()).count();
}

}  // namespace

LiteracyGateway::LiteracyGateway(std::shared_ptr<const LiteracyEngines> engines,
                                 std::shared_ptr<HttpTransport> transport,
                                 std::shared_ptr<MetricsAppender> metrics, GatewayOptions options)
    : engines_(std::move(engines)),
      upstream_(engines_->config.upstream, std::move(transport)),
      metrics_(std::move(metrics)),
      options_(std::move(options)) {
    if (!options_.clock_ms) options_.clock_ms = system_ms;
    if (!options_.id_generator) options_.id_generator = random_id;
}

std::int64_t LiteracyGateway::now() const { return options_.clock_ms(); }

std::shared_ptr<LiteracyGateway::Slot> LiteracyGateway::slot_for(std::string_view session_id,
                                                                 bool create) const {
    std::lock_guard lock(sessions_mutex_);
    auto it = sessions_.find(session_id);
    if (it != sessions_.end()) return it->second;
    if (!create) return nullptr;
    auto slot = std::make_shared<Slot>();
    slot->state.session_id = std::string(session_id);
    sessions_.emplace(std::string(session_id), slot);
    return slot;
}

void LiteracyGateway::expire_pending(SessionState& state, std::int64_t now_ms) const {
    if (!state.pending) return;
    const auto ttl_ms = static_cast<std::int64_t>(engines_->config.limits.pending_ttl_seconds) * 1000;
    if (now_ms - state.pending->created_at_ms >= ttl_ms) state.pending.reset();
}

TurnOutcome LiteracyGateway::handle_turn(std::string_view session_id, std::string_view text) {
    if (text::trim(session_id).empty())
        throw GatewayError(GatewayError::Code::EmptyInput, "session_id must not be empty");
    if (text::trim(text).empty())
        throw GatewayError(GatewayError::Code::EmptyInput, "message text is empty");

    auto slot = slot_for(session_id, true);
    std::unique_lock lock(slot->busy, std::try_to_lock);
    if (!lock.owns_lock())
        throw GatewayError(GatewayError::Code::SessionBusy, "a turn is already in flight");
    const auto now_ms = now();
    expire_pending(slot->state, now_ms);
    if (slot->state.pending)
        throw GatewayError(GatewayError::Code::SessionBusy,
                           "a held message is waiting for a continue/rephrase decision");

    const UserTurn turn{std::string(session_id), slot->state.next_turn_index, std::string(text),
                        now_ms};
    SessionState draft = slot->state;
    auto outcome = process(draft, turn);
    slot->state = std::move(draft);
    return outcome;
}

TurnOutcome LiteracyGateway::process(SessionState& state, const UserTurn& turn) {
    auto pre = run_pre_inference(*engines_, turn, state.skill, options_.observer);
    if (pre.blocking()) {
        TurnOutcome out;
        out.kind = OutcomeKind::Held;
        out.pending_id = options_.id_generator();
        out.interventions = pre.interventions;
        out.turn_index = turn.turn_index;
        out.label = pre.report.label;
        out.clarity_score = pre.clarity.score;
        out.guidance_level = state.skill.guidance_level;
        state.tallies.count(pre.interventions);
        state.pending = PendingTurn{out.pending_id, turn,         std::move(pre.report),
                                    std::move(pre.clarity), std::move(pre.interventions),
                                    pre.trigger,  turn.received_at_ms};
        return out;
    }
    return forward(state, turn, pre.report, pre.clarity, pre.trigger, std::move(pre.interventions));
}

TurnOutcome LiteracyGateway::forward(SessionState& state, const UserTurn& turn,
                                     const DisclosureReport& report,
                                     const ClarityAssessment& clarity,
                                     const std::optional<transparency::Trigger>& trigger,
                                     std::vector<Intervention> shown) {
    std::string reply;
    try {
        reply = forward_upstream(turn.text, state.history, upstream_);
    } catch (const UpstreamError& e) {
        throw GatewayError(e);
    }
    notify(Stage::Upstream);

    auto emitted = transparency::maybe_emit(trigger, state.cooldowns, turn.turn_index,
                                            engines_->config);
    notify(Stage::TransparencyEmit);
    if (emitted.note) shown.push_back(std::move(*emitted.note));

    state.history.push_back({"user", turn.text});
    state.history.push_back({"assistant", reply});
    state.cooldowns = emitted.cooldown;
    const auto guidance_shown = state.skill.guidance_level;
    state.skill = engines_->coach.update(state.skill, clarity.score);
    ++state.tallies.label_counts[static_cast<std::size_t>(report.label)];
    state.tallies.clarity_sum += static_cast<std::uint64_t>(clarity.score);
    ++state.tallies.clarity_count;
    state.tallies.count(shown);
    state.next_turn_index = turn.turn_index + 1;

    if (metrics_) metrics_->append(state.session_id, turn.turn_index, state.skill, state.tallies);

    TurnOutcome out;
    out.kind = OutcomeKind::Forwarded;
    out.assistant_text = std::move(reply);
    out.interventions = std::move(shown);
    out.turn_index = turn.turn_index;
    out.label = report.label;
    out.clarity_score = clarity.score;
    out.guidance_level = guidance_shown;
    return out;
}

TurnOutcome LiteracyGateway::resolve_pending(std::string_view session_id,
                                             std::string_view pending_id,
                                             const Decision& decision) {
    auto slot = slot_for(session_id, false);
    if (!slot) throw GatewayError(GatewayError::Code::NoPending, "no held message for session");
    std::unique_lock lock(slot->busy, std::try_to_lock);
    if (!lock.owns_lock())
        throw GatewayError(GatewayError::Code::SessionBusy, "a turn is already in flight");
    const auto now_ms = now();
    expire_pending(slot->state, now_ms);
    auto& state = slot->state;
    if (!state.pending) throw GatewayError(GatewayError::Code::NoPending, "no held message");
    if (state.pending->pending_id != pending_id)
        throw GatewayError(GatewayError::Code::PendingIdMismatch,
                           "pending_id does not match the held message");

    const PendingTurn held = *state.pending;
    SessionState draft = state;
    draft.pending.reset();

    TurnOutcome outcome;
    if (decision.action == Decision::Action::Continue) {
        if (held.report.label == DisclosureLabel::HighRisk &&
            engines_->config.limits.block_high_risk_forwarding)
            throw GatewayError(GatewayError::Code::ContinueForbidden,
                               "this message cannot be sent as written");
        ++draft.tallies.continue_chosen;
        outcome = forward(draft, held.original_turn, held.report, held.clarity, held.trigger, {});
    } else {
        if (text::trim(decision.text).empty())
            throw GatewayError(GatewayError::Code::EmptyInput, "rephrased text is empty");
        ++draft.tallies.rephrase_accepted;
        const UserTurn turn{held.original_turn.session_id, held.original_turn.turn_index,
                            decision.text, now_ms};
        outcome = process(draft, turn);
    }
    state = std::move(draft);
    return outcome;
}

SessionMetrics LiteracyGateway::export_metrics(std::string_view session_id) const {
    auto slot = slot_for(session_id, false);
    if (!slot) throw GatewayError(GatewayError::Code::UnknownSession, "unknown session");
    std::lock_guard lock(slot->busy);
    return summarize(slot->state.session_id, slot->state.tallies, slot->state.skill);
}

std::vector<Intervention> LiteracyGateway::transparency_page() const {
    return transparency::transparency_page(engines_->config);
}

}  // namespace litgate
