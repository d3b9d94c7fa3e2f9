#include "kishon/folk.hpp"
#include "kishon/nonrestricted.hpp"
#include "kishon/vocabulary.hpp"

#include <doctest.h>

#include <algorithm>

using namespace kishon;
using namespace kishon::nonrestricted;
namespace voc = kishon::vocabulary;

namespace {

ExtendedState advance(ExtendedState s, int bound, const std::vector<int>& choices)
{
    // choices[k] selects among the successors at step k, by the value of the new event.
    for (int want : choices) {
        const auto steps = local_successors(s, bound);
        auto it = std::find_if(steps.begin(), steps.end(), [&](const LocalStep& st) {
            const folk::EventId e{s.process, s.pc()};
            return st.post.structure.val.at(e) == want;
        });
        REQUIRE(it != steps.end());
        s = it->post;
    }
    return s;
}

} // namespace

TEST_SUITE("nonrestricted")
{
    TEST_CASE("initial extended state")
    {
        for (int i = 0; i < 2; ++i) {
            const auto s = initial_extended_state(i, 3);
            CHECK(s.event_count() == 0);
            CHECK(s.pc() == 1);
            CHECK(s.constant("n_" + std::to_string(i)) == 0);
            CHECK(s.constant("v_" + std::to_string(i)) == 0);
            CHECK(s.constant("val_" + std::to_string(i)) == 0);
            CHECK(folk::evaluate(s.structure, alpha_sentence(i)));
        }
    }

    TEST_CASE("end extensions")
    {
        const auto init = initial_extended_state(0, 2);
        CHECK(is_end_extension(init, init));
        const auto steps = local_successors(init, 2);
        REQUIRE(steps.size() == 2);
        for (const auto& st : steps) {
            CHECK(is_end_extension(init, st.post));
            CHECK(st.post.event_count() == 1);
            CHECK(st.line == 1);
        }
        CHECK_FALSE(is_end_extension(steps[0].post, steps[1].post));
        CHECK_FALSE(is_end_extension(steps[1].post, steps[0].post));
        CHECK_FALSE(is_end_extension(steps[0].post, init));
    }

    TEST_CASE("local successors")
    {
        const auto at_read = advance(initial_extended_state(1, 2), 2, {2, 2});
        CHECK(at_read.pc() == 3);
        const auto reads = local_successors(at_read, 2);
        CHECK(reads.size() == 3);
        std::set<int> values;
        for (const auto& st : reads) values.insert(st.post.constant("v_1"));
        CHECK(values == std::set<int>{0, 1, 2});

        const auto at_return = advance(initial_extended_state(0, 2), 2, {2, 2, 1});
        CHECK(at_return.pc() == 4);
        const auto ret = local_successors(at_return, 2);
        REQUIRE(ret.size() == 1);
        CHECK(ret[0].post.structure.val.at(folk::EventId{0, 4}) == 1);
        CHECK(ret[0].post.constant("val_0") == 1);
        CHECK(ret[0].post.structure.holds(voc::return_of(0), folk::EventId{0, 4}));
        CHECK(local_successors(ret[0].post, 2).empty());
    }

    TEST_CASE("execution counts")
    {
        for (int i = 0; i < 2; ++i) {
            CHECK(enumerate_nonrestricted_executions(i, 1).size() == 2);
            const auto three = enumerate_nonrestricted_executions(i, 3);
            CHECK(three.size() == 12);
            for (const auto& m : three) {
                REQUIRE(m.event_count() == 4);
                REQUIRE(m.pc() == 5);
                for (const auto& x : m.structure.events)
                    for (const auto& y : m.structure.events)
                        REQUIRE((x == y || m.structure.precedes(x, y) || m.structure.precedes(y, x)));
                REQUIRE(satisfies_process_properties(m.structure, i));
                REQUIRE(folk::evaluate(m.structure, process_properties_sentence(i)));
                REQUIRE(folk::evaluate(m.structure, alpha_sentence(i)));
            }
        }
        for (int n = 1; n <= 5; ++n) CHECK(enumerate_nonrestricted_executions(0, n).size() == std::size_t(n * (n + 1)));
    }

    TEST_CASE("tampered executions")
    {
        const auto m = enumerate_nonrestricted_executions(0, 3).front();
        auto wrong_write = m.structure;
        wrong_write.val[folk::EventId{0, 2}] = wrong_write.val[folk::EventId{0, 1}] == 1 ? 2 : 1;
        CHECK_FALSE(satisfies_process_properties(wrong_write, 0));
        CHECK_FALSE(folk::evaluate(wrong_write, process_properties_sentence(0)));

        auto two_writes = m.structure;
        two_writes.predicates[voc::write_predicate(0)].insert(folk::EventId{0, 3});
        CHECK_FALSE(satisfies_process_properties(two_writes, 0));
        CHECK_FALSE(folk::evaluate(two_writes, process_properties_sentence(0)));

        auto bad_return = m.structure;
        bad_return.val[folk::EventId{0, 4}] = bad_return.val[folk::EventId{0, 4}] == 1 ? -1 : 1;
        CHECK_FALSE(satisfies_process_properties(bad_return, 0));
        CHECK_FALSE(folk::evaluate(bad_return, process_properties_sentence(0)));

        auto extra = m.structure;
        extra.events.push_back({0, 5});
        extra.val[{0, 5}] = 0;
        extra.predicates[voc::process_predicate(0)].insert({0, 5});
        for (int k = 1; k <= 4; ++k) extra.precedence.emplace(folk::EventId{0, k}, folk::EventId{0, 5});
        CHECK_FALSE(satisfies_process_properties(extra, 0));
        CHECK_FALSE(folk::evaluate(extra, process_properties_sentence(0)));
    }

    TEST_CASE("local invariant and per-process properties")
    {
        for (int i = 0; i < 2; ++i) {
            const auto alpha = check_alpha_invariant(i, 3);
            CHECK(alpha.passed());
            CHECK(alpha.process == i);
            const auto v = check_nonrestricted(i, 3);
            CHECK(v.passed());
            CHECK(v.stats.executions == 12);
        }

        // Final states cover every return-value case.
        std::set<int> returns;
        for (const auto& m : enumerate_nonrestricted_executions(1, 3)) {
            const int pick = m.constant("n_1"), read = m.constant("v_1"), ret = m.constant("val_1");
            if (read > pick) REQUIRE(ret == -1);
            if (read > 0 && read < pick) REQUIRE(ret == 1);
            if (read == 0 || read == pick) REQUIRE(ret == 0);
            returns.insert(ret);
        }
        CHECK(returns == std::set<int>{-1, 0, 1});
    }

    TEST_CASE("JSON")
    {
        const auto doc = to_json(enumerate_nonrestricted_executions(0, 1).front());
        CHECK(doc["process"] == 0);
        CHECK(doc["structure"]["events"].size() == 4);
        CHECK(doc["structure"]["constants"]["PC_0"] == 5);
    }
}
