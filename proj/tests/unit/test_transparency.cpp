#include <doctest.h>

#include <fstream>
#include <random>
#include <sstream>

#include "../support/fixtures.hpp"
#include "litgate/disclosure/monitor.hpp"
#include "litgate/transparency/engine.hpp"

using namespace litgate;
using namespace litgate::transparency;

namespace {

const GatewayConfig& config() {
    static const auto c = litgate::testing::test_config();
    return c;
}

std::optional<Trigger> trigger_for(const std::string& text) {
    static const auto lexicon = TriggerLexicon::from_config(config());
    const auto report = disclosure::build_report(text, config());
    return detect_trigger(UserTurn{"s", 0, text, 0}, report, lexicon);
}

std::string corpus_name(const std::optional<Trigger>& t) {
    if (!t) return "none";
    switch (t->topic) {
        case TransparencyTopic::DataCollected: return "DataCollected";
        case TransparencyTopic::DataUse: return "DataUse";
        case TransparencyTopic::DataNotStored: return "DataNotStored";
        case TransparencyTopic::SystemBehavior: return "SystemBehavior";
    }
    return "?";
}

CooldownState noted_at(std::uint64_t turn) {
    CooldownState c;
    c.global_last_note_turn = turn;
    return c;
}

}  // namespace

TEST_SUITE("transparency.trigger") {
    TEST_CASE("examples") {
        CHECK(trigger_for("Is my data stored anywhere?") == Trigger{TransparencyTopic::DataUse, true});
        CHECK_FALSE(trigger_for("I felt anxious today.").has_value());
        CHECK(trigger_for("My friend Sarah…") == Trigger{TransparencyTopic::DataNotStored, false});
    }

    TEST_CASE("precedence: two question kinds x three labels") {
        // privacy question wins over any label; a system question loses to a non-safe label.
        CHECK(trigger_for("Is my data stored?")->topic == TransparencyTopic::DataUse);
        CHECK(trigger_for("Is my data stored? My friend Sarah asked.")->topic == TransparencyTopic::DataUse);
        CHECK(trigger_for("Is my data stored? I want to die.")->topic == TransparencyTopic::DataUse);
        CHECK(trigger_for("Are you a bot?")->topic == TransparencyTopic::SystemBehavior);
        CHECK(trigger_for("Are you a bot? My friend Sarah says so.")->topic == TransparencyTopic::DataNotStored);
        CHECK(trigger_for("Are you a bot? I want to die.")->topic == TransparencyTopic::DataNotStored);
        CHECK(trigger_for("I want to die.")->topic == TransparencyTopic::DataNotStored);
    }

    TEST_CASE("hand-classified trigger corpus") {
        std::ifstream in(bundled_data_dir() / "gold/transparency_triggers.tsv");
        REQUIRE(in);
        std::string line;
        int rows = 0;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream fields(line);
            std::string text, label, expected;
            std::getline(fields, text, '\t');
            std::getline(fields, label, '\t');
            std::getline(fields, expected, '\t');
            CAPTURE(text);
            CHECK(to_string(disclosure::build_report(text, config()).label) == label);
            CHECK(corpus_name(trigger_for(text)) == expected);
            ++rows;
        }
        CHECK(rows >= 12);
    }
}

TEST_SUITE("transparency.emit") {
    TEST_CASE("first emission is always allowed") {
        const auto r = maybe_emit(Trigger{TransparencyTopic::DataNotStored, false}, {}, 3, config());
        REQUIRE(r.note);
        CHECK(r.note->kind == InterventionKind::TransparencyNote);
        CHECK_FALSE(r.note->blocking);
        CHECK(r.cooldown.global_last_note_turn == 3u);
        CHECK(r.cooldown.last_note_turn[static_cast<std::size_t>(TransparencyTopic::DataNotStored)] == 3u);
    }

    TEST_CASE("label-driven note inside the cooldown is suppressed") {
        const auto r = maybe_emit(Trigger{TransparencyTopic::DataNotStored, false}, noted_at(3), 5, config());
        CHECK_FALSE(r.note);
        CHECK(r.cooldown == noted_at(3));
        CHECK(maybe_emit(Trigger{TransparencyTopic::DataNotStored, false}, noted_at(3), 8, config()).note);
    }

    TEST_CASE("explicit question bypasses the cooldown") {
        const auto r = maybe_emit(Trigger{TransparencyTopic::DataUse, true}, noted_at(3), 4, config());
        REQUIRE(r.note);
        CHECK(r.cooldown.global_last_note_turn == 4u);
    }

    TEST_CASE("no trigger, no note") {
        CHECK_FALSE(maybe_emit(std::nullopt, {}, 0, config()).note);
    }

    TEST_CASE("notes are the configured templates with the model filled in") {
        for (auto topic : kAllTopics) {
            auto expected = config().transparency_templates.at(std::string(template_key(topic)));
            if (auto pos = expected.find("{model}"); pos != std::string::npos)
                expected.replace(pos, 7, config().upstream.model);
            CHECK(render_note(topic, config()) == expected);
            CHECK(render_note(topic, config()).find('{') == std::string::npos);
        }
        CHECK(transparency_page(config()).size() == 4);
    }

    TEST_CASE("random sequences respect the gap") {
        std::mt19937 rng(5);
        for (int seq = 0; seq < 500; ++seq) {
            CooldownState state;
            std::optional<std::uint64_t> last;
            for (std::uint64_t turn = 0; turn < 40; ++turn) {
                const int roll = std::uniform_int_distribution<int>(0, 3)(rng);
                std::optional<Trigger> t;
                if (roll == 1) t = Trigger{TransparencyTopic::DataNotStored, false};
                if (roll == 2) t = Trigger{TransparencyTopic::DataUse, true};
                const auto r = maybe_emit(t, state, turn, config());
                const bool expect = t && (t->explicit_question || !last || turn - *last >= 5);
                CHECK(r.note.has_value() == expect);
                if (r.note) last = turn;
                state = r.cooldown;
            }
        }
    }
}
