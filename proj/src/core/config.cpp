#include "litgate/core/config.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "litgate/core/error.hpp"
#include "litgate/core/toml_lite.hpp"

#ifndef LITGATE_DATA_DIR
#define LITGATE_DATA_DIR "data"
#endif

namespace litgate {

namespace fs = std::filesystem;
using toml_lite::Table;
using toml_lite::Value;

fs::path bundled_data_dir() { return fs::path(LITGATE_DATA_DIR); }

GatewayConfig default_config(const fs::path& base_dir) {
    GatewayConfig c;
    c.topic_menu = {"stress", "relationships", "study pressure"};
    c.topic_keywords = {
        {"stress",
         {"stress", "stressed", "stressful", "anxious", "anxiety", "worried", "worry", "worrying",
          "overwhelmed", "panic", "nervous", "tense", "burnout", "burned out", "on edge"}},
        {"relationships",
         {"relationship", "relationships", "friend", "friends", "friendship", "partner",
          "girlfriend", "boyfriend", "family", "parents", "roommate", "breakup", "broke up",
          "lonely", "loneliness", "argument", "dating"}},
        {"study pressure",
         {"study", "studying", "exam", "exams", "grades", "assignment", "assignments", "deadline",
          "deadlines", "school", "class", "course", "program", "procrastinating",
          "procrastination", "workload", "study pressure", "midterm", "midterms"}},
    };
    c.transparency_templates = {
        {std::string(kTemplateDataCollected),
         "What we collect: the text of your messages, held on this device only while this "
         "session is open."},
        {std::string(kTemplateDataUse),
         "How it is used: each message is checked on this device to offer writing tips and "
         "privacy reminders. It is sent to the AI model ({model}) only after any check you were "
         "asked to confirm."},
        {std::string(kTemplateDataNotStored),
         "What is not stored: your conversation text is not kept after the session ends. We only "
         "save counts, like how many tips were shown, never your words."},
        {std::string(kTemplateSystemBehavior),
         "How this assistant works: replies come from an AI language model, not a person. A "
         "helper on your device reads each message first and may suggest changes or ask before "
         "sending."},
    };
    const fs::path lex = bundled_data_dir() / "lexicons";
    c.lexicons = {lex / "rules.conf",          lex / "goal_markers.txt",
                  lex / "specificity_markers.txt", lex / "hedge_words.txt",
                  lex / "privacy_questions.txt",   lex / "system_questions.txt"};
    c.metrics_path = (base_dir / "litgate-metrics.jsonl").lexically_normal();
    return c;
}

namespace {

[[noreturn]] void bad_type(const std::string& field, const Value& v, const char* want) {
    throw ConfigError::validation(field, std::string("expected ") + want + ", got " +
                                             toml_lite::type_name(v));
}

std::string field_name(std::string_view section, std::string_view key) {
    return section.empty() ? std::string(key) : std::string(section) + "." + std::string(key);
}

class SectionReader {
public:
    SectionReader(const Table* table, std::string_view name) : table_(table), name_(name) {}

    template <typename Fn>
    void with(std::string_view key, Fn&& fn) {
        known_.insert(std::string(key));
        if (!table_) return;
        if (const Value* v = table_->find(key)) fn(*v, field_name(name_, key));
    }

    void string(std::string_view key, std::string& out) {
        with(key, [&](const Value& v, const std::string& f) {
            if (auto* s = std::get_if<std::string>(&v)) out = *s;
            else bad_type(f, v, "string");
        });
    }
    void integer(std::string_view key, int& out) {
        with(key, [&](const Value& v, const std::string& f) {
            if (auto* n = std::get_if<std::int64_t>(&v)) {
                if (*n < INT32_MIN || *n > INT32_MAX)
                    throw ConfigError::validation(f, "integer out of range");
                out = static_cast<int>(*n);
            } else {
                bad_type(f, v, "integer");
            }
        });
    }
    void number(std::string_view key, double& out) {
        with(key, [&](const Value& v, const std::string& f) {
            if (auto* d = std::get_if<double>(&v)) out = *d;
            else if (auto* n = std::get_if<std::int64_t>(&v)) out = static_cast<double>(*n);
            else bad_type(f, v, "number");
        });
    }
    void boolean(std::string_view key, bool& out) {
        with(key, [&](const Value& v, const std::string& f) {
            if (auto* b = std::get_if<bool>(&v)) out = *b;
            else bad_type(f, v, "boolean");
        });
    }
    void list(std::string_view key, std::vector<std::string>& out) {
        with(key, [&](const Value& v, const std::string& f) {
            if (auto* l = std::get_if<toml_lite::StringList>(&v)) out = *l;
            else bad_type(f, v, "array of strings");
        });
    }
    void path(std::string_view key, fs::path& out, const fs::path& base) {
        std::string raw;
        bool present = false;
        with(key, [&](const Value& v, const std::string& f) {
            if (auto* s = std::get_if<std::string>(&v)) raw = *s;
            else bad_type(f, v, "string");
            present = true;
        });
        if (!present) return;
        fs::path p(raw);
        out = (p.is_absolute() ? p : base / p).lexically_normal();
    }

    void reject_unknown() const {
        if (!table_) return;
        for (const auto& [k, v] : table_->entries)
            if (!known_.count(k)) throw ConfigError::validation(field_name(name_, k), "unknown key");
    }

private:
    const Table* table_;
    std::string name_;
    std::set<std::string> known_;
};

const std::set<std::string, std::less<>> kKnownSections = {
    "",           "upstream",     "topics",  "topics.keywords", "rubric", "rubric.hints",
    "transparency", "limits",     "lexicons", "storage"};

}  // namespace

GatewayConfig parse_config(std::string_view source, const fs::path& base_dir) {
    const auto doc = toml_lite::parse(source);
    for (const auto& [name, table] : doc.tables)
        if (!kKnownSections.count(name))
            throw ConfigError::validation(name, "unknown section [" + name + "]");
    for (const auto& [name, tables] : doc.arrays)
        if (name != "referrals")
            throw ConfigError::validation(name, "unknown table array [[" + name + "]]");
    if (const auto* root = doc.table(""); root && !root->entries.empty())
        throw ConfigError::validation(root->entries.front().first,
                                      "keys must appear inside a section");

    GatewayConfig c = default_config(base_dir);

    {
        SectionReader r(doc.table("upstream"), "upstream");
        r.string("endpoint", c.upstream.endpoint);
        std::string key;
        bool has_key = false;
        r.with("api_key", [&](const Value& v, const std::string& f) {
            if (auto* s = std::get_if<std::string>(&v)) key = *s;
            else bad_type(f, v, "string");
            has_key = true;
        });
        if (has_key) c.upstream.api_key = key;
        r.string("model", c.upstream.model);
        r.integer("timeout_seconds", c.upstream.timeout_seconds);
        r.reject_unknown();
    }

    if (auto it = doc.arrays.find("referrals"); it != doc.arrays.end()) {
        c.referral_registry.clear();
        for (const auto& t : it->second) {
            ReferralLink link;
            SectionReader r(&t, "referrals");
            r.string("name", link.name);
            r.string("url", link.url);
            r.string("region", link.region);
            r.reject_unknown();
            c.referral_registry.push_back(std::move(link));
        }
    }

    {
        SectionReader r(doc.table("topics"), "topics");
        r.list("menu", c.topic_menu);
        r.reject_unknown();
    }
    if (const auto* kw = doc.table("topics.keywords")) {
        c.topic_keywords.clear();
        for (const auto& [topic, v] : kw->entries) {
            auto* l = std::get_if<toml_lite::StringList>(&v);
            if (!l) bad_type("topics.keywords." + topic, v, "array of strings");
            c.topic_keywords[topic] = *l;
        }
    }

    {
        SectionReader r(doc.table("rubric"), "rubric");
        r.integer("too_short_max_words", c.rubric.too_short_max_words);
        r.integer("too_long_min_words", c.rubric.too_long_min_words);
        r.integer("clarity_hint_threshold", c.rubric.clarity_hint_threshold);
        r.number("ema_weight", c.rubric.ema_weight);
        r.number("moderate_threshold", c.rubric.moderate_threshold);
        r.number("subtle_threshold", c.rubric.subtle_threshold);
        r.reject_unknown();
    }
    if (const auto* hints = doc.table("rubric.hints")) {
        for (const auto& [k, v] : hints->entries) {
            auto* s = std::get_if<std::string>(&v);
            if (!s) bad_type("rubric.hints." + k, v, "string");
            c.hint_overrides[k] = *s;
        }
    }

    if (const auto* t = doc.table("transparency")) {
        for (const auto& [k, v] : t->entries) {
            auto* s = std::get_if<std::string>(&v);
            if (!s) bad_type("transparency." + k, v, "string");
            if (!c.transparency_templates.count(k))
                throw ConfigError::validation("transparency." + k, "unknown template topic");
            c.transparency_templates[k] = *s;
        }
    }

    {
        SectionReader r(doc.table("limits"), "limits");
        r.integer("cooldown_turns", c.limits.cooldown_turns);
        r.integer("pending_ttl_seconds", c.limits.pending_ttl_seconds);
        r.boolean("block_high_risk_forwarding", c.limits.block_high_risk_forwarding);
        r.reject_unknown();
    }

    {
        SectionReader r(doc.table("lexicons"), "lexicons");
        r.path("rules", c.lexicons.rules, base_dir);
        r.path("goal_markers", c.lexicons.goal_markers, base_dir);
        r.path("specificity_markers", c.lexicons.specificity_markers, base_dir);
        r.path("hedge_words", c.lexicons.hedge_words, base_dir);
        r.path("privacy_questions", c.lexicons.privacy_questions, base_dir);
        r.path("system_questions", c.lexicons.system_questions, base_dir);
        r.reject_unknown();
    }

    {
        SectionReader r(doc.table("storage"), "storage");
        r.path("metrics_path", c.metrics_path, base_dir);
        r.reject_unknown();
    }

    validate(c);
    return c;
}

GatewayConfig load_config(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError::missing_file(path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    auto base = fs::absolute(path).parent_path();
    return parse_config(buf.str(), base);
}

void validate(const GatewayConfig& c) {
    const auto& ep = c.upstream.endpoint;
    if (ep.rfind("http://", 0) != 0 && ep.rfind("https://", 0) != 0)
        throw ConfigError::validation("upstream.endpoint", "must be an http:// or https:// URL");
    if (c.upstream.timeout_seconds < 1)
        throw ConfigError::validation("upstream.timeout_seconds", "must be at least 1");
    if (c.referral_registry.empty())
        throw ConfigError::validation("referral_registry",
                                      "at least one [[referrals]] entry is required");
    for (const auto& r : c.referral_registry)
        if (r.name.empty() || r.url.empty())
            throw ConfigError::validation("referral_registry", "entries need a name and a url");
    if (c.limits.cooldown_turns < 1)
        throw ConfigError::validation("cooldown_turns", "must be at least 1");
    if (c.limits.pending_ttl_seconds < 1)
        throw ConfigError::validation("pending_ttl_seconds", "must be at least 1");
    if (c.rubric.clarity_hint_threshold < 1 || c.rubric.clarity_hint_threshold > 5)
        throw ConfigError::validation("clarity_hint_threshold", "must be in [1, 5]");
    if (c.rubric.too_short_max_words < 0 ||
        c.rubric.too_short_max_words >= c.rubric.too_long_min_words)
        throw ConfigError::validation("too_short_max_words",
                                      "must be non-negative and below too_long_min_words");
    if (!(c.rubric.ema_weight > 0.0 && c.rubric.ema_weight <= 1.0))
        throw ConfigError::validation("ema_weight", "must be in (0, 1]");
    if (!(c.rubric.moderate_threshold >= 1.0 &&
          c.rubric.moderate_threshold < c.rubric.subtle_threshold &&
          c.rubric.subtle_threshold <= 5.0))
        throw ConfigError::validation("moderate_threshold",
                                      "need 1 <= moderate_threshold < subtle_threshold <= 5");
    if (c.topic_menu.empty()) throw ConfigError::validation("topics.menu", "must not be empty");
    if (c.topic_keywords.empty())
        throw ConfigError::validation("topic_keywords", "must not be empty");
    for (const auto& [topic, words] : c.topic_keywords)
        if (words.empty())
            throw ConfigError::validation("topics.keywords." + topic, "must not be empty");
    for (const auto key : {kTemplateDataCollected, kTemplateDataUse, kTemplateDataNotStored,
                           kTemplateSystemBehavior}) {
        auto it = c.transparency_templates.find(std::string(key));
        if (it == c.transparency_templates.end() || it->second.empty())
            throw ConfigError::validation("transparency." + std::string(key),
                                          "template must be present and non-empty");
    }
    if (c.metrics_path.empty())
        throw ConfigError::validation("storage.metrics_path", "must not be empty");
}

std::string write_config(const GatewayConfig& c) {
    using toml_lite::format_double;
    using toml_lite::format_key;
    using toml_lite::format_list;
    using toml_lite::quote;
    std::ostringstream out;
    out << "[upstream]\n"
        << "endpoint = " << quote(c.upstream.endpoint) << "\n";
    if (c.upstream.api_key) out << "api_key = " << quote(*c.upstream.api_key) << "\n";
    out << "model = " << quote(c.upstream.model) << "\n"
        << "timeout_seconds = " << c.upstream.timeout_seconds << "\n\n";
    for (const auto& r : c.referral_registry) {
        out << "[[referrals]]\n"
            << "name = " << quote(r.name) << "\n"
            << "url = " << quote(r.url) << "\n"
            << "region = " << quote(r.region) << "\n\n";
    }
    out << "[topics]\nmenu = " << format_list(c.topic_menu) << "\n\n";
    out << "[topics.keywords]\n";
    for (const auto& [topic, words] : c.topic_keywords)
        out << format_key(topic) << " = " << format_list(words) << "\n";
    out << "\n[rubric]\n"
        << "too_short_max_words = " << c.rubric.too_short_max_words << "\n"
        << "too_long_min_words = " << c.rubric.too_long_min_words << "\n"
        << "clarity_hint_threshold = " << c.rubric.clarity_hint_threshold << "\n"
        << "ema_weight = " << format_double(c.rubric.ema_weight) << "\n"
        << "moderate_threshold = " << format_double(c.rubric.moderate_threshold) << "\n"
        << "subtle_threshold = " << format_double(c.rubric.subtle_threshold) << "\n\n";
    if (!c.hint_overrides.empty()) {
        out << "[rubric.hints]\n";
        for (const auto& [k, v] : c.hint_overrides) out << quote(k) << " = " << quote(v) << "\n";
        out << "\n";
    }
    out << "[transparency]\n";
    for (const auto& [k, v] : c.transparency_templates)
        out << format_key(k) << " = " << quote(v) << "\n";
    out << "\n[limits]\n"
        << "cooldown_turns = " << c.limits.cooldown_turns << "\n"
        << "pending_ttl_seconds = " << c.limits.pending_ttl_seconds << "\n"
        << "block_high_risk_forwarding = "
        << (c.limits.block_high_risk_forwarding ? "true" : "false") << "\n\n";
    out << "[lexicons]\n"
        << "rules = " << quote(c.lexicons.rules.string()) << "\n"
        << "goal_markers = " << quote(c.lexicons.goal_markers.string()) << "\n"
        << "specificity_markers = " << quote(c.lexicons.specificity_markers.string()) << "\n"
        << "hedge_words = " << quote(c.lexicons.hedge_words.string()) << "\n"
        << "privacy_questions = " << quote(c.lexicons.privacy_questions.string()) << "\n"
        << "system_questions = " << quote(c.lexicons.system_questions.string()) << "\n\n";
    out << "[storage]\nmetrics_path = " << quote(c.metrics_path.string()) << "\n";
    return out.str();
}

}  // namespace litgate
