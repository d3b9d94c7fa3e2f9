#include "kishon/executions.hpp"
#include "kishon/orders.hpp"
#include "support/fixtures.hpp"
#include "support/oracles.hpp"

#include <doctest.h>

#include <random>

using namespace kishon::orders;

namespace {

Precedence two_plus_two()
{
    const std::vector<Pair> pairs = {{0, 1}, {2, 3}};
    return Precedence::closure_of(4, pairs);
}

} // namespace

TEST_SUITE("orders")
{
    TEST_CASE("strict partial order check on raw relations")
    {
        CHECK(is_strict_partial_order(Relation{4, {}}));
        CHECK_FALSE(is_strict_partial_order(Relation{3, {{0, 1}, {1, 2}}}));
        CHECK(is_strict_partial_order(Relation{3, {{0, 1}, {1, 2}, {0, 2}}}));
        CHECK_FALSE(is_strict_partial_order(Relation{2, {{0, 0}}}));
        CHECK_FALSE(is_strict_partial_order(Relation{2, {{0, 1}, {1, 0}, {0, 0}, {1, 1}}}));
        CHECK_THROWS_AS(is_russell_wiener(Relation{3, {{0, 1}, {1, 2}}}), OrderError);
    }

    TEST_CASE("closure rejects cycles")
    {
        const std::vector<Pair> cyclic = {{0, 1}, {1, 2}, {2, 0}};
        CHECK_THROWS_AS(Precedence::closure_of(3, cyclic), OrderError);
        const std::vector<Pair> path = {{0, 1}, {1, 2}};
        CHECK(Precedence::closure_of(3, path) == Precedence::chain(3));
    }

    TEST_CASE("Russell-Wiener on chains and 2+2")
    {
        for (std::size_t n = 0; n <= 10; ++n) CHECK(is_russell_wiener(Precedence::chain(n)));
        CHECK_FALSE(is_russell_wiener(two_plus_two()));
        CHECK(is_russell_wiener(Precedence(5)));
    }

    TEST_CASE("labeled poset generator matches known counts")
    {
        const std::vector<std::size_t> expected = {1, 1, 3, 19, 219, 4231};
        for (int n = 0; n <= 5; ++n) {
            std::size_t count = 0;
            oracle::for_each_labeled_poset(n, [&](const oracle::SmallPoset&) { ++count; });
            CHECK(count == expected[n]);
        }
    }

    TEST_CASE("Russell-Wiener agrees with 2+2-freeness on all orders of size <= 6")
    {
        std::size_t interval = 0;
        for (int n = 0; n <= 6; ++n)
            oracle::for_each_labeled_poset(n, [&](const oracle::SmallPoset& p) {
                const bool rw = is_russell_wiener(fixtures::to_precedence(p));
                REQUIRE(rw == !oracle::contains_two_plus_two(p));
                if (rw) ++interval;
            });
        CHECK(interval > 0);
    }

    TEST_CASE("action sequences")
    {
        const std::vector<Action> disjoint = {Action::begin(0), Action::end(0), Action::begin(1), Action::end(1)};
        CHECK(order_from_action_sequence(disjoint).pairs() == std::vector<Pair>{{0, 1}});

        const std::vector<Action> overlap = {Action::begin(0), Action::begin(1), Action::end(0), Action::end(1)};
        CHECK(order_from_action_sequence(overlap).pairs().empty());

        std::vector<Action> sequential;
        for (std::size_t e = 0; e < 8; ++e) {
            sequential.push_back(Action::begin(e));
            sequential.push_back(Action::end(e));
        }
        CHECK(order_from_action_sequence(sequential) == Precedence::chain(8));

        const std::vector<Action> end_first = {Action::end(0), Action::begin(0)};
        CHECK_THROWS_AS(order_from_action_sequence(end_first), OrderError);
        const std::vector<Action> twice = {Action::begin(0), Action::begin(0), Action::end(0)};
        CHECK_THROWS_AS(order_from_action_sequence(twice), OrderError);
        const std::vector<Action> unfinished = {Action::begin(0), Action::begin(1), Action::end(1)};
        CHECK_THROWS_AS(order_from_action_sequence(unfinished), OrderError);
    }

    TEST_CASE("every two-chain interleaving yields a strict partial order extending both chains")
    {
        std::size_t visits = 0;
        for_each_two_chain_interleaving(4, [&](std::span<const Action> seq) {
            ++visits;
            const auto order = order_from_action_sequence(seq);
            REQUIRE(is_strict_partial_order(order.relation()));
            REQUIRE(is_russell_wiener(order));
            for (int p = 0; p < 2; ++p)
                for (int i = 1; i < 4; ++i)
                    REQUIRE(order.precedes(two_chain_element(p, i, 4), two_chain_element(p, i + 1, 4)));
        });
        CHECK(visits == oracle::binomial(16, 8));
    }

    TEST_CASE("interval realization")
    {
        const auto chain = realize_intervals(Precedence::chain(3));
        REQUIRE(chain.intervals.size() == 3);
        for (std::size_t i = 0; i + 1 < 3; ++i) CHECK(chain.intervals[i].right < chain.intervals[i + 1].left);

        const auto overlap = realize_intervals(Precedence(2));
        CHECK(overlap.intervals[0].left <= overlap.intervals[1].right);
        CHECK(overlap.intervals[1].left <= overlap.intervals[0].right);

        CHECK_THROWS_AS(realize_intervals(two_plus_two()), OrderError);

        for (int n = 0; n <= 5; ++n)
            oracle::for_each_labeled_poset(n, [&](const oracle::SmallPoset& p) {
                const auto order = fixtures::to_precedence(p);
                if (!is_russell_wiener(order)) return;
                const auto r = realize_intervals(order);
                for (const auto& iv : r.intervals) REQUIRE(iv.left <= iv.right);
                REQUIRE(order_from_intervals(r) == order);
            });
    }

    TEST_CASE("two-chain orders")
    {
        const auto one = enumerate_two_chain_orders(1);
        REQUIRE(one.size() == 3);
        CHECK(one[0].pairs().empty());

        const auto four = enumerate_two_chain_orders(4);
        const auto reference = oracle::two_chain_interval_orders(4);
        CHECK(four.size() == reference.size());
        std::set<std::vector<Pair>> produced;
        for (const auto& order : four) produced.insert(order.pairs());
        CHECK(produced == reference);
        CHECK(std::is_sorted(four.begin(), four.end()));
        // Golden value; derived above by the threshold oracle.
        CHECK(four.size() == 1107);

        for (const auto& order : four) {
            REQUIRE(kishon::executions::check_concurrency_lemma(order));
            REQUIRE(order_from_intervals(realize_intervals(order)) == order);
        }

        for (int k = 1; k <= 3; ++k) CHECK(enumerate_two_chain_orders(k).size() == oracle::two_chain_interval_orders(k).size());
    }

    TEST_CASE("JSON forms are sorted")
    {
        const std::vector<Pair> pairs = {{2, 3}, {0, 1}};
        const auto order = Precedence::closure_of(4, pairs);
        CHECK(to_json(order)["pairs"] == nlohmann::json::parse("[[0,1],[2,3]]"));
        const auto labels = two_chain_labels(2);
        CHECK(labels == std::vector<std::string>{"a1", "a2", "b1", "b2"});
        CHECK(to_json(order, labels)["pairs"] == nlohmann::json::parse(R"([["a1","a2"],["b1","b2"]])"));
    }

    TEST_CASE("random relations: closure is the least transitive superset")
    {
        std::mt19937 rng(20261019);
        for (int trial = 0; trial < 300; ++trial) {
            const std::size_t n = 1 + rng() % 9;
            std::vector<Pair> pairs;
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i + 1; j < n; ++j)
                    if (rng() % 4 == 0) pairs.emplace_back(i, j);
            const auto order = Precedence::closure_of(n, pairs);
            REQUIRE(is_strict_partial_order(order.relation()));
            for (auto [i, j] : pairs) REQUIRE(order.precedes(i, j));
            for (auto [i, j] : order.pairs()) {
                // Every derived pair is witnessed by a path in the generators.
                std::vector<bool> reach(n, false);
                reach[i] = true;
                for (std::size_t round = 0; round < n; ++round)
                    for (auto [x, y] : pairs)
                        if (reach[x]) reach[y] = true;
                REQUIRE(reach[j]);
            }
        }
    }
}
