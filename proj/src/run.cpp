#include "kishon/run.hpp"

#include "kishon/bridge.hpp"
#include "kishon/global_sem.hpp"
#include "kishon/nonrestricted.hpp"
#include "kishon/orders.hpp"

#include <algorithm>

namespace kishon {

using executions::RegisterSemantics;
using nlohmann::json;

const std::vector<std::string>& check_names()
{
    static const std::vector<std::string> names = {"invariant", "theorem1", "theorem2", "theorem33", "lemmas",
                                                   "nonrestricted", "bridge", "orders", "all"};
    return names;
}

RunConfig config_from_json(const json& doc, RunConfig base)
{
    if (!doc.is_object()) throw ConfigError("config must be a JSON object");
    try {
        for (const auto& [key, value] : doc.items()) {
            if (key == "bound") base.bound = value.get<int>();
            else if (key == "registers") base.registers = executions::parse_register_semantics(value.get<std::string>());
            else if (key == "check") base.check = value.get<std::string>();
            else if (key == "process") base.process = value.get<int>();
            else if (key == "output_path") base.output_path = value.get<std::string>();
            else if (key == "quiet") base.quiet = value.get<bool>();
            else throw ConfigError("unknown config key '" + key + "'");
        }
    } catch (const json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    return base;
}

void validate(const RunConfig& config)
{
    const auto& names = check_names();
    if (std::find(names.begin(), names.end(), config.check) == names.end())
        throw ConfigError("unknown check '" + config.check + "'");
    if (config.bound < 1 || config.bound > kMaxBound)
        throw ConfigError("bound out of range: " + std::to_string(config.bound) + " (expected 1.." +
                          std::to_string(kMaxBound) + ")");
    if (config.process && (*config.process < 0 || *config.process > 1))
        throw ConfigError("process must be 0 or 1");
}

Verdict check_orders()
{
    Stopwatch clock;
    Verdict verdict;
    verdict.check = "orders";
    const auto all = orders::enumerate_two_chain_orders(executions::kChainLength);
    const auto labels = orders::two_chain_labels(executions::kChainLength);
    verdict.stats.orders = all.size();
    verdict.notes["count"] = all.size();
    for (const auto& order : all) {
        if (!verdict.passed()) break;
        if (!orders::is_russell_wiener(order)) {
            verdict.fail_with({{"reason", "not Russell-Wiener"}, {"order", orders::to_json(order, labels)}});
            break;
        }
        if (orders::order_from_intervals(orders::realize_intervals(order)) != order)
            verdict.fail_with({{"reason", "interval realization does not round-trip"},
                               {"order", orders::to_json(order, labels)}});
    }
    verdict.stats.elapsed_ms = clock.elapsed_ms();
    return verdict;
}

namespace {

Verdict nonrestricted_both(int bound)
{
    Verdict v;
    v.check = "nonrestricted";
    v.bound = bound;
    for (int i = 0; i < 2; ++i) {
        v.subchecks.push_back(nonrestricted::check_nonrestricted(i, bound));
        const auto& sub = v.subchecks.back();
        v.stats += sub.stats;
        if (!sub.passed() && v.passed()) v.fail_with({{"process", i}, {"subcheck", to_json(sub)}});
    }
    return v;
}

Verdict dispatch(const RunConfig& c)
{
    const int n = c.bound;
    if (c.check == "invariant")
        return global::check_inductive_invariant(global::phi_invariant(n), protocol::kishon_protocol(), n,
                                                 global::InvariantScope::AllWellTyped);
    if (c.check == "theorem1") return global::check_theorem1(n);
    if (c.check == "theorem2") return global::check_theorem2(n);
    if (c.check == "theorem33") return executions::check_theorem33(n, c.registers);
    if (c.check == "lemmas") return executions::check_lemmas(n);
    if (c.check == "nonrestricted")
        return c.process ? nonrestricted::check_nonrestricted(*c.process, n) : nonrestricted_both(n);
    if (c.check == "bridge") return bridge::check_seriality_theorem(n);
    if (c.check == "orders") {
        Verdict v = check_orders();
        v.bound = n;
        return v;
    }
    return check_all(n);
}

} // namespace

Verdict check_all(int bound)
{
    Stopwatch clock;
    Verdict all;
    all.check = "all";
    all.bound = bound;

    struct Entry {
        RunConfig config;
        bool expect_pass;
    };
    auto config = [bound](std::string name, RegisterSemantics sem = RegisterSemantics::Regular) {
        RunConfig c;
        c.bound = bound;
        c.check = std::move(name);
        c.registers = sem;
        return c;
    };
    std::vector<Entry> plan;
    for (const char* name : {"invariant", "theorem1", "theorem2"}) plan.push_back({config(name), true});
    for (auto sem : {RegisterSemantics::Serial, RegisterSemantics::Regular}) plan.push_back({config("theorem33", sem), true});
    // A single pick value leaves nothing for a garbled read to get wrong.
    plan.push_back({config("theorem33", RegisterSemantics::Safe), bound == 1});
    for (const char* name : {"lemmas", "nonrestricted", "bridge", "orders"}) plan.push_back({config(name), true});

    for (const auto& entry : plan) {
        Verdict sub = dispatch(entry.config);
        sub.notes["expected"] = entry.expect_pass ? "pass" : "fail";
        all.stats += sub.stats;
        const bool matched = sub.passed() == entry.expect_pass;
        if (!matched && all.passed()) {
            all.fail_with({{"check", sub.check},
                           {"registers", sub.registers.value_or("")},
                           {"expected", entry.expect_pass ? "pass" : "fail"},
                           {"result", to_string(sub.result)}});
        }
        all.subchecks.push_back(std::move(sub));
    }
    all.stats.elapsed_ms = clock.elapsed_ms();
    return all;
}

Verdict run(const RunConfig& config)
{
    validate(config);
    Verdict v = dispatch(config);
    if (config.check == "theorem33") v.registers = std::string(executions::to_string(config.registers));
    return v;
}

json enumerate_orders_document(std::size_t k)
{
    const auto all = orders::enumerate_two_chain_orders(k);
    const auto labels = orders::two_chain_labels(k);
    json list = json::array();
    for (const auto& order : all) list.push_back(orders::to_json(order, labels));
    return {{"orders", std::move(list)}, {"count", all.size()}};
}

int exit_code(const Verdict& v) noexcept { return v.passed() ? 0 : 1; }

} // namespace kishon
