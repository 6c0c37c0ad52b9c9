#pragma once

#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "litgate/gateway/metrics_store.hpp"
#include "litgate/gateway/pipeline.hpp"
#include "litgate/gateway/session.hpp"
#include "litgate/gateway/upstream.hpp"

namespace litgate {

class GatewayError : public std::runtime_error {
public:
    enum class Code {
        SessionBusy,
        EmptyInput,
        UpstreamError,
        NoPending,
        PendingIdMismatch,
        ContinueForbidden,
        UnknownSession,
    };

    GatewayError(Code code, const std::string& what) : std::runtime_error(what), code_(code) {}
    GatewayError(const UpstreamError& upstream);

    Code code() const noexcept { return code_; }
    int upstream_status() const noexcept { return upstream_status_; }
    bool retriable() const noexcept { return retriable_; }
    bool timed_out() const noexcept { return timed_out_; }
    // Status code of the local HTTP API for this error.
    int http_status() const noexcept;

private:
    Code code_;
    int upstream_status_ = 0;
    bool retriable_ = false;
    bool timed_out_ = false;
};

std::string_view to_string(GatewayError::Code code) noexcept;

enum class OutcomeKind { Forwarded, Held };

struct TurnOutcome {
    OutcomeKind kind = OutcomeKind::Forwarded;
    std::string assistant_text;  // Forwarded
    std::string pending_id;      // Held
    // Held: the pre-inference stack. Forwarded: hints plus any transparency note.
    std::vector<Intervention> interventions;
    std::uint64_t turn_index = 0;
    DisclosureLabel label = DisclosureLabel::Safe;
    int clarity_score = 1;
    GuidanceLevel guidance_level = GuidanceLevel::Structured;
};

struct Decision {
    enum class Action { Continue, Rephrase };
    Action action = Action::Continue;
    std::string text;

    static Decision continue_original() { return {Action::Continue, {}}; }
    static Decision rephrase(std::string text) { return {Action::Rephrase, std::move(text)}; }
};

struct GatewayOptions {
    // Milliseconds on a local clock; defaults to the system clock.
    std::function<std::int64_t()> clock_ms;
    // Sees every pipeline stage of every turn; used by tests to check stage order.
    StageObserver observer;
    // Pending ids; defaults to 128 random bits in hex.
    std::function<std::string()> id_generator;
};

class LiteracyGateway {
public:
    LiteracyGateway(std::shared_ptr<const LiteracyEngines> engines,
                    std::shared_ptr<HttpTransport> transport,
                    std::shared_ptr<MetricsAppender> metrics = nullptr, GatewayOptions options = {});

    // Throws GatewayError: SessionBusy, EmptyInput, UpstreamError.
    TurnOutcome handle_turn(std::string_view session_id, std::string_view text);

    // Throws GatewayError: NoPending, PendingIdMismatch, ContinueForbidden, SessionBusy,
    // EmptyInput (rephrase with blank text), UpstreamError.
    TurnOutcome resolve_pending(std::string_view session_id, std::string_view pending_id,
                                const Decision& decision);

    // Throws GatewayError(UnknownSession).
    SessionMetrics export_metrics(std::string_view session_id) const;

    std::vector<Intervention> transparency_page() const;

    const GatewayConfig& config() const noexcept { return engines_->config; }

private:
    struct Slot {
        std::mutex busy;
        SessionState state;
    };

    std::shared_ptr<Slot> slot_for(std::string_view session_id, bool create) const;
    std::int64_t now() const;
    void expire_pending(SessionState& state, std::int64_t now_ms) const;
    TurnOutcome process(SessionState& state, const UserTurn& turn);
    TurnOutcome forward(SessionState& state, const UserTurn& turn, const DisclosureReport& report,
                        const ClarityAssessment& clarity,
                        const std::optional<transparency::Trigger>& trigger,
                        std::vector<Intervention> shown);
    void notify(Stage stage) const {
        if (options_.observer) options_.observer(stage);
    }

    std::shared_ptr<const LiteracyEngines> engines_;
    UpstreamClient upstream_;
    std::shared_ptr<MetricsAppender> metrics_;
    GatewayOptions options_;

    mutable std::mutex sessions_mutex_;
    mutable std::map<std::string, std::shared_ptr<Slot>, std::less<>> sessions_;
};

}  // namespace litgate
