#include <doctest.h>

#include <fstream>
#include <random>

#include "../support/fixtures.hpp"
#include "../support/generators.hpp"
#include "litgate/core/error.hpp"
#include "litgate/disclosure/monitor.hpp"
#include "litgate/disclosure/rules.hpp"

using namespace litgate;
using namespace litgate::disclosure;

namespace {

const DisclosureMonitor& monitor() {
    static const auto m = DisclosureMonitor::from_rule_file(bundled_data_dir() / "lexicons/rules.conf");
    return m;
}

DisclosureReport report(std::string_view text) { return monitor().build_report(text); }

SensitiveSpan span(std::size_t start, std::size_t end, SpanCategory cat, std::string text,
                   std::string rule = "test") {
    return {start, end, cat, std::move(text), std::move(rule)};
}

bool has_option(const Intervention& i, OptionAction a) {
    for (const auto& o : i.options)
        if (o.action == a) return true;
    return false;
}

}  // namespace

TEST_SUITE("disclosure.detect") {
    TEST_CASE("reflection is safe with no spans") {
        const auto r = report("I felt anxious today.");
        CHECK(r.spans.empty());
        CHECK(r.label == DisclosureLabel::Safe);
        CHECK(r.redacted_text == "I felt anxious today.");
        CHECK(r.rationale == "safe: no sensitive details detected");
    }

    TEST_CASE("a named friend is one PersonName span") {
        const auto r = report("My friend Sarah…");
        REQUIRE(r.spans.size() == 1);
        CHECK(r.spans[0].category == SpanCategory::PersonName);
        CHECK(r.spans[0].matched_text == "Sarah");
        CHECK(r.spans[0].start == 10);
        CHECK(r.spans[0].end == 15);
        CHECK(r.label == DisclosureLabel::Personal);
        CHECK(r.redacted_text == "My friend [NAME]…");
    }

    TEST_CASE("name plus place") {
        const auto r = report("My friend Sarah lives in Halifax");
        REQUIRE(r.spans.size() == 2);
        CHECK(r.spans[0].category == SpanCategory::PersonName);
        CHECK(r.spans[0].matched_text == "Sarah");
        CHECK(r.spans[1].category == SpanCategory::Location);
        CHECK(r.spans[1].matched_text == "Halifax");
        CHECK(r.redacted_text == "My friend [NAME] lives in [PLACE]");
    }

    TEST_CASE("crisis phrase is high risk and names its rule") {
        const auto r = report("Some days I want to kill myself.");
        CHECK(r.label == DisclosureLabel::HighRisk);
        REQUIRE(r.spans.size() == 1);
        CHECK(r.spans[0].category == SpanCategory::CrisisIndicator);
        CHECK(r.spans[0].matched_text == "kill myself");
        CHECK(r.rationale.find("crisis.lexicon") != std::string::npos);
        CHECK(r.fired_rules == std::vector<std::string>{"crisis.lexicon"});
    }

    TEST_CASE("mixed content resolves to the higher severity") {
        const auto r = report("My friend Sarah says I should not hurt myself.");
        CHECK(r.label == DisclosureLabel::HighRisk);
        CHECK(r.spans.size() == 2);
    }

    TEST_CASE("contact details, identifiers and dates") {
        CHECK(report("email me at sam.k@example.com").spans.at(0).category == SpanCategory::ContactInfo);
        CHECK(report("call 902-555-0143 tonight").spans.at(0).category == SpanCategory::ContactInfo);
        CHECK(report("my student number is B00123456").spans.at(0).category == SpanCategory::Identifier);
        const auto d = report("It happened on March 3rd, 2024.");
        REQUIRE_FALSE(d.spans.empty());
        CHECK(d.spans[0].category == SpanCategory::DateOfEvent);
        CHECK(d.label == DisclosureLabel::Personal);
    }

    TEST_CASE("names found by pattern are also redacted where they repeat") {
        const auto r = report("My roommate Kwabena ignores me. Kwabena never helps.");
        REQUIRE(r.spans.size() == 2);
        CHECK(r.spans[0].matched_text == "Kwabena");
        CHECK(r.spans[1].matched_text == "Kwabena");
        CHECK(r.redacted_text == "My roommate [NAME] ignores me. [NAME] never helps.");
    }

    TEST_CASE("words inside other words do not match") {
        CHECK(report("The overdosed plants are fine; I'm skilled at gardening.").label ==
              DisclosureLabel::Safe);
    }

    TEST_CASE("detection is deterministic and spans are sorted and disjoint") {
        const std::string text =
            "My friend Sarah moved to Toronto on May 5, 2023 and you can reach her at 416-555-0199.";
        const auto a = report(text);
        const auto b = report(text);
        CHECK(a == b);
        for (std::size_t i = 1; i < a.spans.size(); ++i) CHECK(a.spans[i - 1].end <= a.spans[i].start);
        for (const auto& s : a.spans) CHECK(text.substr(s.start, s.end - s.start) == s.matched_text);
    }
}

TEST_SUITE("disclosure.merge") {
    TEST_CASE("severity beats length, length beats start") {
        auto merged = merge_spans({span(0, 20, SpanCategory::LifeEventDetail, std::string(20, 'x')),
                                   span(5, 10, SpanCategory::CrisisIndicator, "xxxxx")});
        REQUIRE(merged.size() == 1);
        CHECK(merged[0].category == SpanCategory::CrisisIndicator);

        merged = merge_spans({span(0, 4, SpanCategory::PersonName, "xxxx"),
                              span(2, 10, SpanCategory::Location, "xxxxxxxx")});
        REQUIRE(merged.size() == 1);
        CHECK(merged[0].start == 2);

        merged = merge_spans({span(3, 7, SpanCategory::PersonName, "xxxx"),
                              span(1, 5, SpanCategory::Location, "xxxx")});
        REQUIRE(merged.size() == 1);
        CHECK(merged[0].start == 1);
    }

    TEST_CASE("disjoint spans survive, sorted") {
        const auto merged = merge_spans({span(10, 12, SpanCategory::PersonName, "xx"),
                                         span(0, 3, SpanCategory::Location, "xxx")});
        REQUIRE(merged.size() == 2);
        CHECK(merged[0].start == 0);
        CHECK(merged[1].start == 10);
    }
}

TEST_SUITE("disclosure.classify") {
    TEST_CASE("taxonomy") {
        CHECK(classify("I felt anxious today.", {}) == DisclosureLabel::Safe);
        const std::vector<SensitiveSpan> name{span(10, 15, SpanCategory::PersonName, "Sarah")};
        CHECK(classify("My friend Sarah…", name) == DisclosureLabel::Personal);
        const std::vector<SensitiveSpan> crisis{span(0, 7, SpanCategory::CrisisIndicator, "suicide")};
        CHECK(classify("suicide", crisis) == DisclosureLabel::HighRisk);
    }

    TEST_CASE("adding a crisis span never lowers the label") {
        for (auto c : kAllCategories) {
            std::vector<SensitiveSpan> spans{span(0, 1, c, "x")};
            const auto before = classify("x y", spans);
            spans.push_back(span(2, 3, SpanCategory::CrisisIndicator, "y"));
            const auto after = classify("x y", spans);
            CHECK(after == DisclosureLabel::HighRisk);
            CHECK(severity_max(before, after) == after);
        }
    }
}

TEST_SUITE("disclosure.redact") {
    TEST_CASE("examples") {
        const std::vector<SensitiveSpan> name{span(10, 15, SpanCategory::PersonName, "Sarah")};
        CHECK(redact("My friend Sarah…", name) == "My friend [NAME]…");
        CHECK(redact("anything at all", {}) == "anything at all");
        const std::vector<SensitiveSpan> two{span(10, 15, SpanCategory::PersonName, "Sarah"),
                                             span(25, 32, SpanCategory::Location, "Halifax")};
        CHECK(redact("My friend Sarah lives in Halifax", two) == "My friend [NAME] lives in [PLACE]");
    }

    TEST_CASE("bad spans throw SpanOutOfBounds") {
        const std::string text = "a…b";
        const std::vector<SensitiveSpan> past{span(2, 9, SpanCategory::PersonName, "x")};
        CHECK_THROWS_AS(redact(text, past), SpanOutOfBounds);
        const std::vector<SensitiveSpan> split{span(2, 4, SpanCategory::PersonName, "x")};
        CHECK_THROWS_AS(redact(text, split), SpanOutOfBounds);
        const std::vector<SensitiveSpan> overlap{span(0, 2, SpanCategory::PersonName, "x"),
                                                 span(1, 3, SpanCategory::PersonName, "x")};
        CHECK_THROWS_AS(redact("abcd", overlap), SpanOutOfBounds);
        const std::vector<SensitiveSpan> empty{span(1, 1, SpanCategory::PersonName, "")};
        CHECK_THROWS_AS(redact("abcd", empty), SpanOutOfBounds);
    }

    TEST_CASE("generated cases: no matched text survives, outside text untouched") {
        std::mt19937_64 rng(7);
        for (int n = 0; n < 300; ++n) {
            const auto c = litgate::testing::make_redaction_case(rng);
            const auto out = redact(c.text, c.spans);
            std::string expected;
            for (std::size_t i = 0; i < c.spans.size(); ++i)
                expected += c.segments[i] + std::string(placeholder(c.spans[i].category));
            expected += c.segments.back();
            CHECK(out == expected);
            for (const auto& s : c.spans) CHECK(out.find(s.matched_text) == std::string::npos);
        }
    }
}

TEST_SUITE("disclosure.interventions") {
    TEST_CASE("flag x label table") {
        for (bool block : {false, true}) {
            auto config = litgate::testing::test_config();
            config.limits.block_high_risk_forwarding = block;
            CAPTURE(block);

            CHECK(interventions_for(report("I felt anxious today."), config).empty());

            const auto personal = interventions_for(report("My friend Sarah…"), config);
            REQUIRE(personal.size() == 1);
            CHECK(personal[0].kind == InterventionKind::DisclosureReflection);
            CHECK(personal[0].blocking);
            CHECK(personal[0].message == kReflectionCue);
            REQUIRE(personal[0].options.size() == 3);
            CHECK(personal[0].options[0].action == OptionAction::Continue);
            CHECK(personal[0].options[1].action == OptionAction::RephraseWith);
            CHECK(personal[0].options[1].text == "My friend [NAME]…");
            CHECK(personal[0].options[2].action == OptionAction::FreeRephrase);

            const auto high = interventions_for(report("I want to end my life"), config);
            REQUIRE(high.size() == 2);
            CHECK(high[0].kind == InterventionKind::DisclosureReflection);
            CHECK(has_option(high[0], OptionAction::Continue) == !block);
            CHECK(has_option(high[0], OptionAction::RephraseWith));
            CHECK(high[1].kind == InterventionKind::CrisisReferral);
            CHECK(high[1].blocking);
            CHECK(high[1].referral_links == config.referral_registry);
        }
    }

    TEST_CASE("every bundled crisis phrase yields exactly one referral") {
        const auto config = litgate::testing::test_config();
        for (const auto& phrase : text::load_word_list(bundled_data_dir() / "lexicons/crisis_phrases.txt")) {
            const auto r = report("lately " + phrase + " is on my mind");
            CAPTURE(phrase);
            CHECK(r.label == DisclosureLabel::HighRisk);
            int referrals = 0;
            for (const auto& i : interventions_for(r, config))
                referrals += i.kind == InterventionKind::CrisisReferral;
            CHECK(referrals == 1);
        }
    }
}

TEST_SUITE("disclosure.rules") {
    TEST_CASE("rule file parsing") {
        const auto rules = parse_rule_file(
            "# comment\n\na | PersonName | gazetteer | names.txt | insensitive\n"
            "b | ContactInfo | pattern | x(a|b)y | sensitive\n");
        REQUIRE(rules.size() == 2);
        CHECK(rules[1].source == "x(a|b)y");
        CHECK(rules[1].case_sensitive);
        CHECK(rules[0].kind == MatcherKind::Gazetteer);
    }

    TEST_CASE("invalid rule sets are rejected") {
        litgate::testing::ScratchDir dir;
        auto write = [&](const std::string& body) {
            std::ofstream(dir.path / "rules.conf") << body;
            std::ofstream(dir.path / "crisis.txt") << "suicide\n";
            std::ofstream(dir.path / "empty.txt") << "# nothing\n";
            return dir.path / "rules.conf";
        };
        const std::string crisis = "c | CrisisIndicator | wordlist | crisis.txt | insensitive\n";
        CHECK_THROWS_AS(load_rules(write(crisis + crisis)), ConfigError);
        CHECK_THROWS_AS(load_rules(write(crisis + "p | PersonName | pattern | ([a- | sensitive\n")),
                        ConfigError);
        CHECK_THROWS_AS(load_rules(write(crisis + "g | Location | gazetteer | empty.txt | insensitive\n")),
                        ConfigError);
        CHECK_THROWS_AS(load_rules(write(crisis + "g | Location | gazetteer | missing.txt | insensitive\n")),
                        ConfigError);
        CHECK_THROWS_AS(load_rules(write("g | Location | pattern | x | insensitive\n")), ConfigError);
        CHECK_NOTHROW(load_rules(write(crisis)));
    }

    TEST_CASE("crisis lexicon rejects blank phrases") {
        CHECK_THROWS_AS(CrisisLexicon("c", {"ok", "   "}), ConfigError);
        CHECK_THROWS_AS(CrisisLexicon("c", {}), ConfigError);
    }
}
