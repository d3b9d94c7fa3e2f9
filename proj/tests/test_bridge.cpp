#include "kishon/bridge.hpp"
#include "kishon/folk.hpp"
#include "kishon/global_sem.hpp"

#include <doctest.h>

#include <algorithm>
#include <map>

using namespace kishon;
using executions::event_index;
using global::StateVar;

namespace {

const std::vector<global::History>& histories(int bound)
{
    static std::map<int, std::vector<global::History>> cache;
    auto it = cache.find(bound);
    if (it == cache.end()) it = cache.emplace(bound, global::enumerate_histories(protocol::kishon_protocol(), bound)).first;
    return it->second;
}

bool all_first(const global::History& h)
{
    for (std::size_t j = 0; j < 4; ++j)
        if (h.labels[j].process != 0) return false;
    return true;
}

} // namespace

TEST_SUITE("bridge")
{
    TEST_CASE("sequential history maps to the full chain")
    {
        const auto& hs = histories(2);
        auto it = std::find_if(hs.begin(), hs.end(), all_first);
        REQUIRE(it != hs.end());
        const auto b = bridge::history_to_execution(*it);
        for (std::size_t i = 0; i + 1 < executions::kEventCount; ++i) CHECK(b.execution.order.precedes(i, i + 1));
        CHECK(b.execution.order.pairs().size() == 28);
        CHECK(b.execution.val(1, 3) == b.execution.val(0, 1));
        CHECK(b.execution.val(0, 3) == 0);
    }

    TEST_CASE("structure of bridged executions")
    {
        for (const auto& h : histories(2)) {
            const auto b = bridge::history_to_execution(h);
            const auto s = b.execution.structure(2);
            REQUIRE(s.events.size() == 8);
            REQUIRE(s.predicates.at("p_0").size() == 4);
            REQUIRE(s.predicates.at("p_1").size() == 4);
            REQUIRE(folk::is_system_execution(s));
            REQUIRE(executions::restricted_violations(b.execution, 2).empty());
            // Chains per process; total order overall.
            for (std::size_t i = 0; i < 8; ++i)
                for (std::size_t j = i + 1; j < 8; ++j) REQUIRE(b.execution.order.comparable(i, j));
            const auto& last = h.states.back();
            REQUIRE(b.execution.val(0, 1) == last[StateVar::n0]);
            REQUIRE(b.execution.val(1, 3) == last[StateVar::v1]);
            REQUIRE(b.execution.val(0, 4) == last[StateVar::val0]);
        }
    }

    TEST_CASE("bridged executions at bound 2 are serial restricted executions")
    {
        const auto serial = executions::enumerate_restricted_executions(2, executions::RegisterSemantics::Serial);
        std::set<executions::SystemExecution> pool(serial.begin(), serial.end());
        std::set<executions::SystemExecution> images;
        for (const auto& h : histories(2)) {
            const auto e = bridge::history_to_execution(h).execution;
            REQUIRE(pool.count(e) == 1);
            images.insert(e);
        }
        // Distinct histories have distinct step-value sequences, hence distinct images.
        CHECK(images.size() == histories(2).size());
    }

    TEST_CASE("seriality theorem")
    {
        const auto v = bridge::check_seriality_theorem(3);
        CHECK(v.passed());
        CHECK(v.stats.histories == 630);

        for (const auto& h : histories(3)) {
            const auto e = bridge::history_to_execution(h).execution;
            const auto s = e.structure(3);
            REQUIRE(folk::evaluate(s, executions::regularity_sentence(0)));
            REQUIRE(folk::evaluate(s, executions::regularity_sentence(1)));
        }
    }

    TEST_CASE("stale read is caught")
    {
        // Process 0 finishes before process 1 reads, so b3 must see n_0.
        const auto& hs = histories(3);
        auto it = std::find_if(hs.begin(), hs.end(), [](const global::History& h) {
            return all_first(h) && h.states.back()[StateVar::n0] == 2;
        });
        REQUIRE(it != hs.end());
        auto mutated = bridge::history_to_execution(*it).execution;
        mutated.values[event_index(1, 3)] = 0;
        const auto violation = bridge::seriality_violation(mutated, 3);
        REQUIRE(violation.has_value());
        CHECK(violation->find("b3") != std::string::npos);
    }

    TEST_CASE("non-terminating histories are rejected")
    {
        auto h = histories(1).front();
        h.states.pop_back();
        h.labels.pop_back();
        CHECK_THROWS_AS(bridge::history_to_execution(h), bridge::BridgeError);
        CHECK_THROWS_AS(bridge::history_to_execution(global::History{}), bridge::BridgeError);
    }

    TEST_CASE("theorem verdicts agree across frameworks")
    {
        for (const auto& h : histories(3)) {
            const auto& f = h.states.back();
            const bool direct =
                protocol::poker_outcome_correct(f[StateVar::n0], f[StateVar::n1], f[StateVar::val0], f[StateVar::val1]);
            REQUIRE(direct == executions::satisfies_trichotomy(bridge::history_to_execution(h).execution));
        }
        CHECK(global::check_theorem1(3).passed() == executions::check_theorem33(3, executions::RegisterSemantics::Serial).passed());
    }
}
