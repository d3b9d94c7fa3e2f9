#include "kishon/bridge.hpp"

#include "kishon/folk.hpp"
#include "kishon/protocol.hpp"

#include <vector>

namespace kishon::bridge {

using executions::event_index;
using executions::SystemExecution;
using global::StateVar;

int step_value(const global::GlobalState& post, const global::StepLabel& label)
{
    const bool first = label.process == 0;
    switch (label.line) {
    case 1: return post[first ? StateVar::n0 : StateVar::n1];
    case 2: return post[first ? StateVar::R0 : StateVar::R1];
    case 3: return post[first ? StateVar::v0 : StateVar::v1];
    case 4: return post[first ? StateVar::val0 : StateVar::val1];
    default: throw BridgeError("step label " + label.to_string() + " has no event");
    }
}

BridgedExecution history_to_execution(const global::History& h)
{
    if (!h.terminating()) throw BridgeError("history is not terminating");
    if (h.labels.size() != executions::kEventCount || h.states.size() != h.labels.size() + 1)
        throw BridgeError("history does not have exactly 8 steps");

    std::vector<std::size_t> position;
    SystemExecution e;
    for (std::size_t j = 0; j < h.labels.size(); ++j) {
        const auto& label = h.labels[j];
        const std::size_t event = event_index(label.process, label.line);
        e.values[event] = step_value(h.states[j + 1], label);
        position.push_back(event);
    }
    std::vector<orders::Pair> chain;
    for (std::size_t j = 0; j + 1 < position.size(); ++j) chain.push_back({position[j], position[j + 1]});
    e.order = orders::Precedence::closure_of(executions::kEventCount, chain);
    return {h, e};
}

std::optional<std::string> seriality_violation(const SystemExecution& e, int bound)
{
    const auto s = e.structure(bound);
    for (int owner = 0; owner < 2; ++owner) {
        if (auto v = executions::serial_register_violation(e, owner)) return v;
        if (!folk::evaluate(s, executions::regularity_sentence(owner)))
            return "register R_" + std::to_string(owner) + " is not regular";
    }
    return std::nullopt;
}

Verdict check_seriality_theorem(int bound)
{
    Stopwatch clock;
    Verdict verdict;
    verdict.check = "bridge";
    verdict.bound = bound;

    global::System system(protocol::kishon_protocol(), bound);
    system.for_each_history([&](const global::History& h) {
        ++verdict.stats.histories;
        if (!verdict.passed()) return;
        const auto bridged = history_to_execution(h);
        const auto& e = bridged.execution;
        const auto s = e.structure(bound);
        auto fail = [&](const std::string& reason) {
            verdict.fail_with({{"reason", reason}, {"history", global::to_json(h)}, {"execution", folk::to_json(s)}});
        };
        if (!folk::is_system_execution(s)) return fail("image is not a system execution");
        if (auto v = seriality_violation(e, bound)) return fail(*v);
        const auto& last = h.states.back();
        const bool history_ok = protocol::poker_outcome_correct(last[StateVar::n0], last[StateVar::n1],
                                                                last[StateVar::val0], last[StateVar::val1]);
        if (history_ok != executions::satisfies_trichotomy(e)) fail("trichotomy verdicts disagree");
    });
    verdict.stats.executions = verdict.stats.histories;
    verdict.stats.elapsed_ms = clock.elapsed_ms();
    return verdict;
}

} // namespace kishon::bridge
