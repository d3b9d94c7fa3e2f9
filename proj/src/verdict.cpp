#include "kishon/verdict.hpp"

#include <stdexcept>

namespace kishon {

using nlohmann::json;

std::string_view to_string(Outcome outcome) noexcept
{
    switch (outcome) {
    case Outcome::Pass: return "pass";
    case Outcome::Fail: return "fail";
    case Outcome::Error: return "error";
    }
    return "error";
}

Outcome outcome_from_string(std::string_view text)
{
    if (text == "pass") return Outcome::Pass;
    if (text == "fail") return Outcome::Fail;
    if (text == "error") return Outcome::Error;
    throw std::invalid_argument("unknown verdict result '" + std::string(text) + "'");
}

Stats& Stats::operator+=(const Stats& other)
{
    states_scanned += other.states_scanned;
    steps_checked += other.steps_checked;
    histories += other.histories;
    orders += other.orders;
    executions += other.executions;
    elapsed_ms += other.elapsed_ms;
    return *this;
}

void Verdict::fail_with(json witness)
{
    if (result != Outcome::Fail || !counterexample) counterexample = std::move(witness);
    result = Outcome::Fail;
}

namespace {

json stats_to_json(const Stats& s)
{
    return json{{"states_scanned", s.states_scanned}, {"steps_checked", s.steps_checked},
                {"histories", s.histories},           {"orders", s.orders},
                {"executions", s.executions},         {"elapsed_ms", s.elapsed_ms}};
}

Stats stats_from_json(const json& doc)
{
    Stats s;
    s.states_scanned = doc.at("states_scanned").get<std::uint64_t>();
    s.steps_checked = doc.at("steps_checked").get<std::uint64_t>();
    s.histories = doc.at("histories").get<std::uint64_t>();
    s.orders = doc.at("orders").get<std::uint64_t>();
    s.executions = doc.at("executions").get<std::uint64_t>();
    s.elapsed_ms = doc.at("elapsed_ms").get<std::int64_t>();
    return s;
}

} // namespace

json to_json(const Verdict& v)
{
    json doc{{"check", v.check},
             {"bound", v.bound},
             {"result", std::string(to_string(v.result))},
             {"stats", stats_to_json(v.stats)}};
    if (v.registers) doc["registers"] = *v.registers;
    if (v.process) doc["process"] = *v.process;
    if (v.counterexample) doc["counterexample"] = *v.counterexample;
    if (!v.notes.empty()) doc["notes"] = v.notes;
    if (v.message) doc["message"] = *v.message;
    if (!v.subchecks.empty()) {
        json subs = json::array();
        for (const auto& sub : v.subchecks) subs.push_back(to_json(sub));
        doc["subchecks"] = std::move(subs);
    }
    return doc;
}

Verdict verdict_from_json(const json& doc)
{
    Verdict v;
    v.check = doc.at("check").get<std::string>();
    v.bound = doc.at("bound").get<int>();
    v.result = outcome_from_string(doc.at("result").get<std::string>());
    v.stats = stats_from_json(doc.at("stats"));
    if (doc.contains("registers")) v.registers = doc["registers"].get<std::string>();
    if (doc.contains("process")) v.process = doc["process"].get<int>();
    if (doc.contains("counterexample")) v.counterexample = doc["counterexample"];
    if (doc.contains("notes")) v.notes = doc["notes"];
    if (doc.contains("message")) v.message = doc["message"].get<std::string>();
    if (doc.contains("subchecks"))
        for (const auto& sub : doc["subchecks"]) v.subchecks.push_back(verdict_from_json(sub));
    return v;
}

bool same_result(const Verdict& lhs, const Verdict& rhs)
{
    auto strip = [](Verdict v) {
        auto rec = [](auto& self, Verdict& x) -> void {
            x.stats.elapsed_ms = 0;
            for (auto& sub : x.subchecks) self(self, sub);
        };
        rec(rec, v);
        return v;
    };
    return strip(lhs) == strip(rhs);
}

} // namespace kishon
