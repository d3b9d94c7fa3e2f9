#include "kishon/executions.hpp"

#include "kishon/nonrestricted.hpp"
#include "kishon/protocol.hpp"
#include "kishon/vocabulary.hpp"

#include <algorithm>

namespace kishon::executions {

using folk::EventId;
using folk::Formula;
using nlohmann::json;
using orders::Precedence;
namespace voc = vocabulary;

std::string_view to_string(RegisterSemantics sem) noexcept
{
    switch (sem) {
    case RegisterSemantics::Serial: return "serial";
    case RegisterSemantics::Regular: return "regular";
    case RegisterSemantics::Safe: return "safe";
    }
    return "?";
}

RegisterSemantics parse_register_semantics(std::string_view text)
{
    if (text == "serial") return RegisterSemantics::Serial;
    if (text == "regular") return RegisterSemantics::Regular;
    if (text == "safe") return RegisterSemantics::Safe;
    throw std::invalid_argument("unknown register semantics '" + std::string(text) + "'");
}

std::set<int> allowed_read_values(std::size_t read, const Precedence& order, std::span<const WriteEvent> writes,
                                  int initial, RegisterSemantics sem, int bound)
{
    std::vector<const WriteEvent*> preceding, overlapping;
    for (const auto& w : writes) {
        if (order.precedes(w.event, read)) preceding.push_back(&w);
        else if (order.concurrent(w.event, read)) overlapping.push_back(&w);
    }

    // Maximal preceding writes: no other preceding write lies between.
    std::set<int> last;
    for (const auto* w : preceding) {
        const bool shadowed = std::any_of(preceding.begin(), preceding.end(), [&](const WriteEvent* other) {
            return order.precedes(w->event, other->event) && order.precedes(other->event, read);
        });
        if (!shadowed) last.insert(w->value);
    }
    if (preceding.empty()) last.insert(initial);

    switch (sem) {
    case RegisterSemantics::Serial:
        if (!overlapping.empty())
            throw SerialityViolation("read " + event_id(read).label() + " overlaps write " +
                                     event_id(overlapping.front()->event).label());
        return last;
    case RegisterSemantics::Regular:
        for (const auto* w : overlapping) last.insert(w->value);
        return last;
    case RegisterSemantics::Safe:
        if (overlapping.empty()) return last;
        {
            std::set<int> any;
            for (int v = 0; v <= bound; ++v) any.insert(v);
            return any;
        }
    }
    return last;
}

folk::EventId event_id(std::size_t index) noexcept
{
    return {static_cast<int>(index / kChainLength), static_cast<int>(index % kChainLength) + 1};
}

folk::FiniteStructure SystemExecution::structure(int bound) const
{
    folk::FiniteStructure s;
    s.data_min = -1;
    s.data_max = bound;
    for (std::size_t i = 0; i < kEventCount; ++i) s.events.push_back(event_id(i));
    for (int p = 0; p < 2; ++p) {
        auto& proc = s.predicates[voc::process_predicate(p)];
        for (int line = 1; line <= 4; ++line) proc.insert(event_id(event_index(p, line)));
        s.predicates[voc::assignment_predicate(p)] = {event_id(event_index(p, 1))};
        s.predicates[voc::write_predicate(p)] = {event_id(event_index(p, 2))};
        s.predicates[voc::read_predicate(p)] = {event_id(event_index(p, 3))};
        s.predicates[voc::return_of(p)] = {event_id(event_index(p, 4))};
        s.constants[voc::initial_value_constant(p)] = 0;
    }
    for (auto [i, j] : order.pairs()) s.precedence.emplace(event_id(i), event_id(j));
    for (std::size_t i = 0; i < kEventCount; ++i) s.val[event_id(i)] = values[i];
    return s;
}

json to_json(const SystemExecution& e, int bound) { return folk::to_json(e.structure(bound)); }

// ---------------------------------------------------------------------------
// Register specifications

Formula regularity_sentence(int owner)
{
    using namespace folk::fo;
    const std::string p = voc::process_predicate(owner);
    const std::string write = voc::write_on(voc::register_name(owner));
    const std::string read = voc::read_of(voc::register_name(owner));
    const std::string initial = voc::initial_value_constant(owner);

    Formula serial_writer =
        forall({"a", "b"}, implies(pred(p, "a") && pred(p, "b"), same("a", "b") || prec("a", "b") || prec("b", "a"))) &&
        forall({"a"}, implies(pred(write, "a"), pred(p, "a")));
    Formula disjoint = !exists({"a"}, pred(write, "a") && pred(read, "a"));

    Formula from_concurrent =
        exists({"w"}, pred(write, "w") && cmp(val("r"), CmpOp::Eq, val("w")) && concurrent("w", "r"));
    Formula from_last = exists(
        {"w"}, all_of({pred(write, "w"), cmp(val("r"), CmpOp::Eq, val("w")), prec("w", "r"),
                       !exists({"x"}, pred(write, "x") && prec("w", "x") && prec("x", "r"))}));
    Formula from_initial =
        !exists({"w"}, pred(write, "w") && prec("w", "r")) && cmp(val("r"), CmpOp::Eq, constant(initial));
    Formula reads = forall({"r"}, implies(pred(read, "r"), from_concurrent || from_last || from_initial));

    return all_of({serial_writer, disjoint, reads});
}

namespace {

// The owner's write is its line 2; the other process reads at its line 3.
std::size_t write_of(int owner) { return event_index(owner, 2); }
std::size_t reader_of(int owner) { return event_index(1 - owner, 3); }

} // namespace

bool is_regular_register(const SystemExecution& e, int owner)
{
    const WriteEvent w{write_of(owner), e.values[write_of(owner)]};
    const auto allowed =
        allowed_read_values(reader_of(owner), e.order, {&w, 1}, 0, RegisterSemantics::Regular, /*bound=*/0);
    return allowed.count(e.values[reader_of(owner)]) != 0;
}

std::optional<std::string> serial_register_violation(const SystemExecution& e, int owner)
{
    const std::size_t w = write_of(owner), r = reader_of(owner);
    const std::string reg = voc::register_name(owner);
    if (!e.order.comparable(w, r))
        return "read " + event_id(r).label() + " of " + reg + " overlaps write " + event_id(w).label();
    const int expected = e.order.precedes(w, r) ? e.values[w] : 0;
    if (e.values[r] != expected)
        return "read " + event_id(r).label() + " of " + reg + " returned " + std::to_string(e.values[r]) +
               " instead of " + std::to_string(expected);
    return std::nullopt;
}

std::vector<std::string> restricted_violations(const SystemExecution& e, int bound)
{
    std::vector<std::string> problems;
    const auto s = e.structure(bound);
    for (auto& p : folk::check_structure(s)) problems.push_back(std::move(p));
    if (!folk::is_system_execution(s)) problems.push_back("precedence is not a Russell-Wiener strict partial order");

    using namespace folk::fo;
    const Formula partition =
        forall({"e"}, pred(voc::process_predicate(0), "e") || pred(voc::process_predicate(1), "e")) &&
        !exists({"e"}, pred(voc::process_predicate(0), "e") && pred(voc::process_predicate(1), "e"));
    if (!folk::evaluate(s, partition)) problems.push_back("events are not partitioned between p_0 and p_1");

    for (int i = 0; i < 2; ++i) {
        // Reduct to L^i_NR: p_i's events and p_i's own predicates.
        auto r = folk::reduct(s, voc::process_predicate(i));
        for (auto it = r.predicates.begin(); it != r.predicates.end();) {
            const auto& name = it->first;
            const bool own = name == voc::process_predicate(i) || name == voc::assignment_predicate(i) ||
                             name == voc::write_predicate(i) || name == voc::read_predicate(i) ||
                             name == voc::return_of(i);
            it = own ? std::next(it) : r.predicates.erase(it);
        }
        if (!folk::evaluate(r, nonrestricted::process_properties_sentence(i)))
            problems.push_back("reduct to p_" + std::to_string(i) + " violates the per-process properties");
        if (!folk::evaluate(s, regularity_sentence(i)))
            problems.push_back("register " + voc::register_name(i) + " is not regular");
    }
    return problems;
}

int decision_value(int read_value, int pick)
{
    static const protocol::Expression decision = protocol::kishon_decision("v", "n");
    return protocol::eval_expression(decision, std::map<std::string, int>{{"v", read_value}, {"n", pick}});
}

void for_each_restricted_execution(int bound, RegisterSemantics sem,
                                   const std::function<void(const SystemExecution&)>& visit)
{
    if (bound < 1) throw std::invalid_argument("bound must be at least 1");
    const std::size_t a2 = event_index(0, 2), a3 = event_index(0, 3), b2 = event_index(1, 2), b3 = event_index(1, 3);

    for (const auto& order : orders::enumerate_two_chain_orders(kChainLength)) {
        // Serial registers need every read comparable with every write.
        if (sem == RegisterSemantics::Serial && (!order.comparable(a2, b3) || !order.comparable(b2, a3))) continue;
        SystemExecution e;
        e.order = order;
        for (int n0 = 1; n0 <= bound; ++n0)
            for (int n1 = 1; n1 <= bound; ++n1) {
                const WriteEvent on_r0{a2, n0}, on_r1{b2, n1};
                const auto a3_values = allowed_read_values(a3, order, {&on_r1, 1}, 0, sem, bound);
                const auto b3_values = allowed_read_values(b3, order, {&on_r0, 1}, 0, sem, bound);
                for (int va : a3_values)
                    for (int vb : b3_values) {
                        e.values = {n0, n0, va, decision_value(va, n0), n1, n1, vb, decision_value(vb, n1)};
                        visit(e);
                    }
            }
    }
}

std::vector<SystemExecution> enumerate_restricted_executions(int bound, RegisterSemantics sem)
{
    std::vector<SystemExecution> out;
    for_each_restricted_execution(bound, sem, [&](const SystemExecution& e) { out.push_back(e); });
    return out;
}

bool satisfies_trichotomy(const SystemExecution& e) noexcept
{
    return protocol::poker_outcome_correct(e.val(0, 1), e.val(1, 1), e.val(0, 4), e.val(1, 4));
}

Verdict check_theorem33(int bound, RegisterSemantics sem)
{
    Stopwatch clock;
    Verdict verdict;
    verdict.check = "theorem33";
    verdict.bound = bound;
    verdict.registers = std::string(to_string(sem));

    std::set<Precedence> orders_seen;
    for_each_restricted_execution(bound, sem, [&](const SystemExecution& e) {
        ++verdict.stats.executions;
        orders_seen.insert(e.order);
        if (!satisfies_trichotomy(e) && verdict.passed()) verdict.fail_with({{"execution", to_json(e, bound)}});
    });
    verdict.stats.orders = orders_seen.size();
    verdict.stats.elapsed_ms = clock.elapsed_ms();
    return verdict;
}

bool check_lemma_ml(const SystemExecution& e) noexcept { return !(e.val(0, 3) == 0 && e.val(1, 3) == 0); }

bool check_concurrency_lemma(const Precedence& order) noexcept
{
    return order.precedes(event_index(1, 2), event_index(0, 3)) || order.precedes(event_index(0, 2), event_index(1, 3));
}

bool check_lemma_lm1(const SystemExecution& e) noexcept
{
    if (!(e.val(0, 1) < e.val(1, 1))) return true;
    const bool first = e.val(1, 3) == 0 || e.val(1, 4) == 1;
    const bool second = e.val(0, 3) == 0 || e.val(0, 4) == -1;
    return first && second;
}

Verdict check_lemmas(int bound)
{
    Stopwatch clock;
    Verdict verdict;
    verdict.check = "lemmas";
    verdict.bound = bound;

    const auto all_orders = orders::enumerate_two_chain_orders(kChainLength);
    verdict.stats.orders = all_orders.size();
    for (const auto& order : all_orders)
        if (!check_concurrency_lemma(order) && verdict.passed())
            verdict.fail_with({{"lemma", "concurrency"}, {"order", orders::to_json(order, orders::two_chain_labels(4))}});

    for (auto sem : {RegisterSemantics::Regular, RegisterSemantics::Serial}) {
        for_each_restricted_execution(bound, sem, [&](const SystemExecution& e) {
            ++verdict.stats.executions;
            if (!check_lemma_ml(e) && verdict.passed())
                verdict.fail_with({{"lemma", "ML"}, {"registers", to_string(sem)}, {"execution", to_json(e, bound)}});
            if (!check_lemma_lm1(e) && verdict.passed())
                verdict.fail_with({{"lemma", "LM1"}, {"registers", to_string(sem)}, {"execution", to_json(e, bound)}});
        });
    }
    verdict.stats.elapsed_ms = clock.elapsed_ms();
    return verdict;
}

} // namespace kishon::executions
