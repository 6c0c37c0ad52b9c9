#include <doctest.h>

#include <fstream>
#include <random>

#include "../support/fixtures.hpp"
#include "litgate/core/config.hpp"
#include "litgate/core/error.hpp"
#include "litgate/core/toml_lite.hpp"

using namespace litgate;
using litgate::testing::ScratchDir;

namespace {

const char* kMinimal = R"(
[[referrals]]
name = "Crisis Line"
url = "https://crisis.example.org"
region = "CA"
)";

void write_file(const std::filesystem::path& p, const std::string& s) {
    std::ofstream(p, std::ios::binary) << s;
}

ConfigError::Kind kind_of(const std::string& src) {
    try {
        parse_config(src, bundled_data_dir());
    } catch (const ConfigError& e) {
        return e.kind();
    }
    FAIL("expected ConfigError");
    return ConfigError::Kind::ParseError;
}

std::string field_of(const std::string& src) {
    try {
        parse_config(src, bundled_data_dir());
    } catch (const ConfigError& e) {
        return e.field();
    }
    return "<no error>";
}

std::string random_word(std::mt19937& rng) {
    static const std::string alphabet = "abcdefghijklmnopqrstuvwxyz \"\\\t#=[]é";
    std::uniform_int_distribution<std::size_t> len(1, 12), pick(0, alphabet.size() - 1);
    std::string s;
    const auto n = len(rng);
    while (s.size() < n) {
        auto c = alphabet[pick(rng)];
        if (static_cast<unsigned char>(c) >= 0x80) {
            s += "é";
        } else {
            s += c;
        }
    }
    return s;
}

GatewayConfig random_config(std::mt19937& rng, const std::filesystem::path& base) {
    auto c = default_config(base);
    std::uniform_int_distribution<int> small(1, 50), coin(0, 1), three(1, 3);
    c.upstream.endpoint = "https://llm.example.org/v" + std::to_string(small(rng));
    if (coin(rng)) c.upstream.api_key = random_word(rng);
    c.upstream.model = random_word(rng);
    c.upstream.timeout_seconds = small(rng);
    c.referral_registry.clear();
    for (int i = three(rng); i > 0; --i)
        c.referral_registry.push_back({random_word(rng), "https://r.example/" + std::to_string(i),
                                       coin(rng) ? random_word(rng) : ""});
    c.topic_menu.clear();
    c.topic_keywords.clear();
    for (int i = three(rng); i > 0; --i) {
        auto t = "topic " + std::to_string(i) + random_word(rng);
        c.topic_menu.push_back(t);
        c.topic_keywords[t] = {random_word(rng), random_word(rng)};
    }
    c.rubric.too_short_max_words = small(rng);
    c.rubric.too_long_min_words = c.rubric.too_short_max_words + small(rng);
    c.rubric.clarity_hint_threshold = std::uniform_int_distribution<int>(1, 5)(rng);
    c.rubric.ema_weight = std::uniform_real_distribution<double>(0.01, 1.0)(rng);
    c.rubric.moderate_threshold = std::uniform_real_distribution<double>(1.0, 3.0)(rng);
    c.rubric.subtle_threshold = std::uniform_real_distribution<double>(3.01, 5.0)(rng);
    if (coin(rng)) c.hint_overrides["moderate.goal"] = random_word(rng);
    for (auto& [k, v] : c.transparency_templates) v = random_word(rng) + " {model}";
    c.limits.cooldown_turns = small(rng);
    c.limits.pending_ttl_seconds = small(rng) * 60;
    c.limits.block_high_risk_forwarding = coin(rng) == 1;
    c.metrics_path = base / (random_word(rng) + ".jsonl");
    return c;
}

}  // namespace

TEST_SUITE("config") {
    TEST_CASE("minimal config fills documented defaults") {
        const auto c = parse_config(kMinimal, bundled_data_dir());
        CHECK(c.limits.cooldown_turns == 5);
        CHECK(c.rubric.clarity_hint_threshold == 4);
        CHECK(c.limits.block_high_risk_forwarding);
        CHECK(c.limits.pending_ttl_seconds == 1800);
        CHECK(c.upstream.timeout_seconds == 30);
        CHECK(c.rubric.ema_weight == doctest::Approx(0.3));
        REQUIRE(c.referral_registry.size() == 1);
        CHECK(c.referral_registry[0].name == "Crisis Line");
        CHECK(c.topic_menu == std::vector<std::string>{"stress", "relationships", "study pressure"});
    }

    TEST_CASE("cooldown_turns = 0 is rejected by name") {
        const std::string src = std::string(kMinimal) + "[limits]\ncooldown_turns = 0\n";
        CHECK(kind_of(src) == ConfigError::Kind::ValidationError);
        CHECK(field_of(src) == "cooldown_turns");
    }

    TEST_CASE("empty referral registry is rejected by name") {
        CHECK(field_of("[limits]\ncooldown_turns = 3\n") == "referral_registry");
        CHECK(kind_of("") == ConfigError::Kind::ValidationError);
    }

    TEST_CASE("other invariant violations name their field") {
        const std::string m = kMinimal;
        CHECK(field_of(m + "[rubric]\nclarity_hint_threshold = 6\n") == "clarity_hint_threshold");
        CHECK(field_of(m + "[rubric]\ntoo_short_max_words = 200\n") == "too_short_max_words");
        CHECK(field_of(m + "[rubric]\nema_weight = 0.0\n") == "ema_weight");
        CHECK(field_of(m + "[upstream]\nendpoint = \"ftp://x\"\n") == "upstream.endpoint");
        CHECK(field_of(m + "[topics]\nmenu = []\n") == "topics.menu");
        CHECK(field_of(m + "[bogus]\nx = 1\n") == "bogus");
    }

    TEST_CASE("parse errors carry line and column") {
        try {
            parse_config("[limits]\ncooldown_turns = = 3\n", bundled_data_dir());
            FAIL("expected ParseError");
        } catch (const ConfigError& e) {
            CHECK(e.kind() == ConfigError::Kind::ParseError);
            CHECK(e.line() == 2);
            CHECK(e.column() > 0);
        }
        CHECK(kind_of("[limits\n") == ConfigError::Kind::ParseError);
        CHECK(kind_of("[limits]\ncooldown_turns = \"unterminated\n") == ConfigError::Kind::ParseError);
    }

    TEST_CASE("wrong value types are validation errors") {
        CHECK(field_of(std::string(kMinimal) + "[limits]\ncooldown_turns = \"five\"\n") ==
              "limits.cooldown_turns");
    }

    TEST_CASE("missing file") {
        try {
            load_config("/nonexistent/litgate.toml");
            FAIL("expected MissingFile");
        } catch (const ConfigError& e) {
            CHECK(e.kind() == ConfigError::Kind::MissingFile);
        }
    }

    TEST_CASE("relative paths resolve against the config file directory") {
        ScratchDir dir;
        write_file(dir.path / "litgate.toml",
                   std::string(kMinimal) + "[storage]\nmetrics_path = \"m/metrics.jsonl\"\n");
        const auto c = load_config(dir.path / "litgate.toml");
        CHECK(c.metrics_path == std::filesystem::absolute(dir.path) / "m/metrics.jsonl");
    }

    TEST_CASE("bundled config loads and matches the defaults apart from referrals") {
        const auto c = load_config(bundled_data_dir() / "litgate.toml");
        auto expected = default_config(bundled_data_dir());
        expected.referral_registry = c.referral_registry;
        CHECK(c.referral_registry.size() >= 1);
        CHECK(c == expected);
    }

    TEST_CASE("round trip: parse(write(c)) == c for generated configs") {
        ScratchDir dir;
        std::mt19937 rng(20261018);
        for (int i = 0; i < 300; ++i) {
            const auto c = random_config(rng, dir.path);
            validate(c);
            const auto text = write_config(c);
            GatewayConfig back;
            REQUIRE_NOTHROW(back = parse_config(text, dir.path));
            CHECK_MESSAGE(back == c, text);
        }
    }

    TEST_CASE("round trip through a file") {
        ScratchDir dir;
        auto c = litgate::testing::test_config();
        write_file(dir.path / "c.toml", write_config(c));
        CHECK(load_config(dir.path / "c.toml") == c);
    }
}

TEST_SUITE("toml_lite") {
    TEST_CASE("values, arrays of tables, comments") {
        const auto doc = toml_lite::parse(R"(
# comment
[a]
s = "x # not a comment"  # trailing
i = -12
d = 2.5
b = false
l = ["p", "q",
     "r"]
"quoted key" = 'lit\eral'

[[arr]]
k = 1
[[arr]]
k = 2
)");
        const auto* a = doc.table("a");
        REQUIRE(a);
        CHECK(std::get<std::string>(*a->find("s")) == "x # not a comment");
        CHECK(std::get<std::int64_t>(*a->find("i")) == -12);
        CHECK(std::get<double>(*a->find("d")) == 2.5);
        CHECK(std::get<bool>(*a->find("b")) == false);
        CHECK(std::get<toml_lite::StringList>(*a->find("l")) ==
              toml_lite::StringList{"p", "q", "r"});
        CHECK(std::get<std::string>(*a->find("quoted key")) == "lit\\eral");
        REQUIRE(doc.arrays.at("arr").size() == 2);
    }

    TEST_CASE("duplicate keys are parse errors") {
        CHECK_THROWS_AS(toml_lite::parse("[a]\nx = 1\nx = 2\n"), ConfigError);
    }
}
