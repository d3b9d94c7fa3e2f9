#include "kishon/bridge.hpp"
#include "kishon/executions.hpp"
#include "kishon/folk.hpp"
#include "kishon/global_sem.hpp"
#include "kishon/orders.hpp"
#include "support/fixtures.hpp"

#include <doctest.h>

#include <algorithm>

using namespace kishon;
using folk::EventId;
using folk::FiniteStructure;
namespace fo = folk::fo;
using fo::operator!;
using fo::operator&&;

namespace {

FiniteStructure chain_structure(int n)
{
    FiniteStructure s;
    for (int i = 1; i <= n; ++i) {
        s.events.push_back({0, i});
        s.val[{0, i}] = 0;
        for (int j = i + 1; j <= n; ++j) s.precedence.emplace(EventId{0, i}, EventId{0, j});
    }
    return s;
}

FiniteStructure two_plus_two()
{
    FiniteStructure s;
    for (EventId e : {EventId{0, 1}, EventId{0, 2}, EventId{1, 1}, EventId{1, 2}}) {
        s.events.push_back(e);
        s.val[e] = 0;
    }
    s.precedence = {{{0, 1}, {0, 2}}, {{1, 1}, {1, 2}}};
    return s;
}

} // namespace

TEST_SUITE("folk")
{
    TEST_CASE("event labels round-trip")
    {
        CHECK(EventId{0, 3}.label() == "a3");
        CHECK(EventId{1, 1}.label() == "b1");
        CHECK(EventId{4, 2}.label() == "e4_2");
        for (EventId e : {EventId{0, 4}, EventId{1, 2}, EventId{7, 0}}) CHECK(EventId::parse(e.label()) == e);
        CHECK_THROWS(EventId::parse("zz"));
    }

    TEST_CASE("check_structure")
    {
        CHECK(folk::check_structure(FiniteStructure{}).empty());

        auto s = chain_structure(3);
        CHECK(folk::check_structure(s).empty());
        s.val.erase(EventId{0, 2});
        const auto problems = folk::check_structure(s);
        REQUIRE(problems.size() == 1);
        CHECK(problems[0].find("val not total") != std::string::npos);

        auto out_of_range = chain_structure(2);
        out_of_range.val[{0, 1}] = 7;
        CHECK_FALSE(folk::check_structure(out_of_range).empty());

        const auto execs = executions::enumerate_restricted_executions(2, executions::RegisterSemantics::Regular);
        REQUIRE(!execs.empty());
        CHECK(folk::check_structure(execs.front().structure(2)).empty());
        CHECK(folk::check_structure(execs.back().structure(2)).empty());
    }

    TEST_CASE("evaluate: basic sentences")
    {
        const auto chain = chain_structure(3);
        CHECK(folk::evaluate(chain, fo::forall({"a"}, !fo::prec("a", "a"))));
        CHECK(folk::evaluate(chain, folk::strict_partial_order_sentence()));
        CHECK(folk::evaluate(chain, folk::russell_wiener_sentence()));
        CHECK(folk::evaluate(chain, fo::exists({"a", "b"}, fo::prec("a", "b"))));
        CHECK_FALSE(folk::evaluate(chain, fo::forall({"a", "b"}, fo::prec("a", "b"))));

        const auto bad = two_plus_two();
        CHECK_FALSE(folk::evaluate(bad, folk::russell_wiener_sentence()));
        CHECK(folk::evaluate(bad, folk::strict_partial_order_sentence()));

        // Quantifiers over an empty universe.
        FiniteStructure empty;
        CHECK(folk::evaluate(empty, fo::forall({"x"}, fo::falsity())));
        CHECK_FALSE(folk::evaluate(empty, fo::exists({"x"}, fo::truth())));
    }

    TEST_CASE("evaluate: data terms and free variables")
    {
        auto s = chain_structure(2);
        s.data_max = 3;
        s.val[{0, 1}] = 2;
        s.val[{0, 2}] = 3;
        s.constants["k"] = 2;
        s.predicates["P"] = {{0, 2}};
        CHECK(folk::evaluate(s, fo::cmp(fo::val("x"), CmpOp::Eq, fo::constant("k")), {{"x", EventId{0, 1}}}));
        CHECK(folk::evaluate(s, fo::forall({"x"}, fo::implies(fo::pred("P", "x"), fo::cmp(fo::val("x"), CmpOp::Gt, fo::lit(2))))));
        CHECK_THROWS_AS(folk::evaluate(s, fo::pred("P", "y")), folk::EvaluationError);
        CHECK_THROWS_AS(folk::evaluate(s, fo::forall({"x"}, fo::pred("Missing", "x"))), folk::EvaluationError);
        CHECK_THROWS_AS(folk::evaluate(s, fo::forall({"x"}, fo::cmp(fo::val("x"), CmpOp::Eq, fo::constant("c")))),
                        folk::EvaluationError);

        const auto free = folk::free_variables(fo::exists({"a"}, fo::prec("a", "b") && fo::pred("P", "c")));
        CHECK(free == std::set<std::string>{"b", "c"});
        CHECK(folk::free_variables(folk::russell_wiener_sentence()).empty());
    }

    TEST_CASE("regularity sentence holds on a bridged serial history")
    {
        const auto histories = global::enumerate_histories(protocol::kishon_protocol(), 1);
        REQUIRE(histories.size() == 70);
        const auto bridged = bridge::history_to_execution(histories[17]);
        const auto s = bridged.execution.structure(1);
        CHECK(folk::evaluate(s, executions::regularity_sentence(0)));
        CHECK(folk::evaluate(s, executions::regularity_sentence(1)));
    }

    TEST_CASE("is_system_execution")
    {
        CHECK(folk::is_system_execution(FiniteStructure{}));
        CHECK(folk::is_system_execution(chain_structure(4)));
        CHECK_FALSE(folk::is_system_execution(two_plus_two()));

        using orders::Action;
        // a1 b1 overlap, then a2..a4 and b2..b4 in alternation.
        std::vector<Action> seq = {Action::begin(0), Action::begin(4), Action::end(0), Action::end(4)};
        for (std::size_t i = 1; i < 4; ++i) {
            seq.push_back(Action::begin(i));
            seq.push_back(Action::begin(4 + i));
            seq.push_back(Action::end(4 + i));
            seq.push_back(Action::end(i));
        }
        const auto order = orders::order_from_action_sequence(seq);
        CHECK(folk::is_system_execution(fixtures::to_structure(order)));

        auto cyclic = chain_structure(2);
        cyclic.precedence.emplace(EventId{0, 2}, EventId{0, 1});
        CHECK_FALSE(folk::is_system_execution(cyclic));
    }

    TEST_CASE("reduct keeps one sort")
    {
        const auto execs = executions::enumerate_restricted_executions(1, executions::RegisterSemantics::Serial);
        const auto s = execs.front().structure(1);
        const auto r = folk::reduct(s, "p_1");
        CHECK(r.events.size() == 4);
        CHECK(std::all_of(r.events.begin(), r.events.end(), [](const EventId& e) { return e.process == 1; }));
        CHECK(r.predicates.at("p_0").empty());
        CHECK(r.constants == s.constants);
        CHECK(folk::check_structure(r).empty());
    }

    TEST_CASE("structure JSON round-trips")
    {
        const auto execs = executions::enumerate_restricted_executions(2, executions::RegisterSemantics::Regular);
        for (std::size_t i = 0; i < execs.size(); i += 97) {
            const auto s = execs[i].structure(2);
            const auto doc = folk::to_json(s);
            CHECK(folk::structure_from_json(doc) == s);
            CHECK(folk::to_json(folk::structure_from_json(doc)) == doc);
        }
        CHECK_THROWS(folk::structure_from_json(nlohmann::json::array()));
    }

    TEST_CASE("sentence agrees with native Russell-Wiener check on small orders")
    {
        const auto rw = folk::russell_wiener_sentence();
        for (int n = 0; n <= 5; ++n)
            oracle::for_each_labeled_poset(n, [&](const oracle::SmallPoset& p) {
                const auto s = fixtures::to_structure(p);
                REQUIRE(folk::evaluate(s, rw) == folk::is_system_execution(s));
            });
    }
}
