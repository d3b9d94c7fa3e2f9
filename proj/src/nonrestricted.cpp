#include "kishon/nonrestricted.hpp"

#include "kishon/vocabulary.hpp"

#include <algorithm>
#include <stdexcept>

namespace kishon::nonrestricted {

using folk::EventId;
using folk::Formula;
using nlohmann::json;
namespace voc = vocabulary;

int ExtendedState::pc() const { return constant(voc::pc_constant(process)); }

int ExtendedState::constant(const std::string& name) const
{
    auto it = structure.constants.find(name);
    if (it == structure.constants.end()) throw std::out_of_range("no constant '" + name + "'");
    return it->second;
}

namespace {

void require_process(int process)
{
    if (process != 0 && process != 1) throw std::invalid_argument("process must be 0 or 1");
}

std::string predicate_for(const protocol::Instruction& ins, int process)
{
    return std::visit(
        [&](const auto& x) -> std::string {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, protocol::PickNonZero>) return voc::assignment_to(x.target);
            else if constexpr (std::is_same_v<T, protocol::WriteReg>) return voc::write_on(x.reg);
            else if constexpr (std::is_same_v<T, protocol::ReadReg>) return voc::read_of(x.reg);
            else return voc::return_of(process);
        },
        ins);
}

} // namespace

ExtendedState initial_extended_state(int process, int bound, const protocol::Protocol& p)
{
    require_process(process);
    const auto& prog = p.processes[static_cast<std::size_t>(process)];
    ExtendedState s;
    s.process = process;
    s.structure.data_min = -1;
    s.structure.data_max = bound;
    s.structure.predicates[voc::process_predicate(process)];
    for (const auto& ins : prog.instructions) s.structure.predicates[predicate_for(ins, process)];
    for (const auto& decl : prog.locals) s.structure.constants[decl.name] = decl.initial;
    s.structure.constants[voc::pc_constant(process)] = 1;
    return s;
}

bool is_end_extension(const ExtendedState& m, const ExtendedState& n)
{
    if (m.process != n.process) return false;
    const auto& ms = m.structure;
    const auto& ns = n.structure;
    if (ms.data_min != ns.data_min || ms.data_max != ns.data_max) return false;
    for (const auto& e : ms.events)
        if (!ns.has_event(e)) return false;

    // Initial section: nothing outside m precedes anything inside m.
    for (const auto& x : ms.events)
        for (const auto& y : ns.events)
            if (!ms.has_event(y) && ns.precedes(y, x)) return false;

    // n restricted to m's events is m.
    for (const auto& [name, members] : ms.predicates)
        if (!ns.predicates.count(name)) return false;
    for (const auto& [name, members] : ns.predicates) {
        auto mit = ms.predicates.find(name);
        for (const auto& e : ms.events) {
            const bool in_m = mit != ms.predicates.end() && mit->second.count(e);
            if (in_m != (members.count(e) != 0)) return false;
        }
    }
    for (const auto& x : ms.events)
        for (const auto& y : ms.events)
            if (ms.precedes(x, y) != ns.precedes(x, y)) return false;
    for (const auto& e : ms.events) {
        auto mv = ms.val.find(e), nv = ns.val.find(e);
        if (mv == ms.val.end() || nv == ns.val.end() || mv->second != nv->second) return false;
    }
    return true;
}

std::vector<LocalStep> local_successors(const ExtendedState& s, int bound, const protocol::Protocol& p)
{
    require_process(s.process);
    const int pc = s.pc();
    const auto& prog = p.processes[static_cast<std::size_t>(s.process)];
    if (pc < 1 || pc > static_cast<int>(prog.instructions.size())) return {};
    const auto& ins = prog.instructions[static_cast<std::size_t>(pc - 1)];

    const EventId fresh{s.process, pc};
    ExtendedState base = s;
    auto& bs = base.structure;
    for (const auto& e : bs.events) bs.precedence.emplace(e, fresh);
    bs.events.push_back(fresh);
    bs.predicates[voc::process_predicate(s.process)].insert(fresh);
    bs.predicates[predicate_for(ins, s.process)].insert(fresh);
    bs.constants[voc::pc_constant(s.process)] = pc + 1;

    std::vector<LocalStep> out;
    auto emit = [&](const std::string& target, int value) {
        ExtendedState t = base;
        t.structure.val[fresh] = value;
        if (!target.empty()) t.structure.constants[target] = value;
        out.push_back({s, std::move(t), pc});
    };
    std::visit(
        [&](const auto& x) {
            using T = std::decay_t<decltype(x)>;
            if constexpr (std::is_same_v<T, protocol::PickNonZero>) {
                for (int n = 1; n <= bound; ++n) emit(x.target, n);
            } else if constexpr (std::is_same_v<T, protocol::WriteReg>) {
                emit({}, s.constant(x.source));
            } else if constexpr (std::is_same_v<T, protocol::ReadReg>) {
                for (int v = 0; v <= bound; ++v) emit(x.target, v);
            } else {
                const int result = protocol::eval_expression(x.value, s.structure.constants);
                emit(x.target, result);
            }
        },
        ins);
    return out;
}

std::vector<ExtendedState> enumerate_nonrestricted_executions(int process, int bound, const protocol::Protocol& p)
{
    std::vector<ExtendedState> finals;
    std::vector<ExtendedState> stack{initial_extended_state(process, bound, p)};
    while (!stack.empty()) {
        ExtendedState s = std::move(stack.back());
        stack.pop_back();
        auto steps = local_successors(s, bound, p);
        if (steps.empty()) {
            finals.push_back(std::move(s));
            continue;
        }
        for (auto& step : steps) stack.push_back(std::move(step.post));
    }
    std::sort(finals.begin(), finals.end(), [](const ExtendedState& l, const ExtendedState& r) {
        return l.structure.val < r.structure.val;
    });
    return finals;
}

// ---------------------------------------------------------------------------
// Properties of non-restricted executions

bool satisfies_process_properties(const folk::FiniteStructure& m, int process)
{
    require_process(process);
    const std::string proc = voc::process_predicate(process);
    const std::string asg = voc::assignment_predicate(process);
    const std::string write = voc::write_predicate(process);
    const std::string read = voc::read_predicate(process);
    const std::string ret = voc::return_of(process);

    // Exactly four events of p_i, linearly ordered.
    if (m.events.size() != 4) return false;
    for (const auto& e : m.events)
        if (!m.holds(proc, e)) return false;
    std::vector<EventId> order = m.events;
    auto preds = [&](const EventId& e) {
        return std::count_if(m.events.begin(), m.events.end(), [&](const EventId& x) { return m.precedes(x, e); });
    };
    std::sort(order.begin(), order.end(), [&](const EventId& l, const EventId& r) { return preds(l) < preds(r); });
    for (std::size_t i = 0; i < 4; ++i)
        for (std::size_t j = 0; j < 4; ++j)
            if (m.precedes(order[i], order[j]) != (i < j)) return false;

    auto val = [&](const EventId& e) -> std::optional<int> {
        auto it = m.val.find(e);
        if (it == m.val.end()) return std::nullopt;
        return it->second;
    };
    const auto v1 = val(order[0]), v2 = val(order[1]), v3 = val(order[2]), v4 = val(order[3]);
    if (!v1 || !v2 || !v3 || !v4) return false;

    auto only = [&](const std::string& predicate, const EventId& e) {
        for (const auto& x : m.events)
            if (m.holds(predicate, x) != (x == e)) return false;
        return true;
    };
    // First event: a positive pick.
    if (!m.holds(asg, order[0]) || *v1 <= 0) return false;
    // Second event: the only write, copying the pick.
    if (!only(write, order[1]) || *v2 != *v1) return false;
    // Third event: the only read, any natural.
    if (!only(read, order[2]) || *v3 < 0) return false;
    // Fourth event: the return, decided by read versus pick.
    if (!m.holds(ret, order[3])) return false;
    if ((*v3 == 0 || *v3 == *v1) && *v4 != 0) return false;
    if (*v3 > 0 && *v3 < *v1 && *v4 != 1) return false;
    if (*v3 > *v1 && *v4 != -1) return false;
    return true;
}

namespace {

using namespace folk::fo;

Formula pick_ok(int i, const std::string& a1)
{
    return pred(voc::assignment_predicate(i), a1) && cmp(val(a1), CmpOp::Gt, lit(0));
}

Formula write_ok(int i, const std::string& a1, const std::string& a2)
{
    return pred(voc::write_predicate(i), a2) && cmp(val(a2), CmpOp::Eq, val(a1));
}

Formula read_ok(int i, const std::string& a3)
{
    return pred(voc::read_predicate(i), a3) && cmp(val(a3), CmpOp::Ge, lit(0));
}

Formula return_ok(int i, const std::string& a1, const std::string& a3, const std::string& a4)
{
    return pred(voc::return_of(i), a4) &&
           implies(cmp(val(a3), CmpOp::Eq, lit(0)) || cmp(val(a3), CmpOp::Eq, val(a1)), cmp(val(a4), CmpOp::Eq, lit(0))) &&
           implies(cmp(val(a3), CmpOp::Gt, lit(0)) && cmp(val(a3), CmpOp::Lt, val(a1)), cmp(val(a4), CmpOp::Eq, lit(1))) &&
           implies(cmp(val(a3), CmpOp::Gt, val(a1)), cmp(val(a4), CmpOp::Eq, lit(-1)));
}

Formula exactly(std::vector<std::string> vars)
{
    std::vector<Formula> alts;
    for (const auto& v : vars) alts.push_back(same("e", v));
    return forall({"e"}, any_of(std::move(alts)));
}

Formula every_event_of(int i) { return forall({"e"}, pred(voc::process_predicate(i), "e")); }

Formula no_other(const std::string& predicate, const std::string& keep)
{
    return forall({"e"}, implies(pred(predicate, "e"), same("e", keep)));
}

Formula pc_is(int i, int line) { return cmp(constant(voc::pc_constant(i)), CmpOp::Eq, lit(line)); }

} // namespace

Formula process_properties_sentence(int process)
{
    require_process(process);
    const int i = process;
    Formula linear = forall({"x", "y"}, same("x", "y") || prec("x", "y") || prec("y", "x"));
    Formula body = all_of({
        prec("a1", "a2"), prec("a2", "a3"), prec("a3", "a4"),
        exactly({"a1", "a2", "a3", "a4"}),
        pick_ok(i, "a1"),
        write_ok(i, "a1", "a2"), no_other(voc::write_predicate(i), "a2"),
        read_ok(i, "a3"), no_other(voc::read_predicate(i), "a3"),
        return_ok(i, "a1", "a3", "a4"),
    });
    return every_event_of(i) && linear && folk::strict_partial_order_sentence() &&
           exists({"a1", "a2", "a3", "a4"}, body);
}

Formula alpha_sentence(int process)
{
    require_process(process);
    const int i = process;
    return all_of({
        every_event_of(i),
        implies(pc_is(i, 1), !exists({"e"}, truth())),
        implies(pc_is(i, 2), exists({"a1"}, exactly({"a1"}) && pick_ok(i, "a1"))),
        implies(pc_is(i, 3), exists({"a1", "a2"}, all_of({prec("a1", "a2"), exactly({"a1", "a2"}), pick_ok(i, "a1"),
                                                          write_ok(i, "a1", "a2")}))),
        implies(pc_is(i, 4),
                exists({"a1", "a2", "a3"}, all_of({prec("a1", "a2"), prec("a2", "a3"), exactly({"a1", "a2", "a3"}),
                                                   pick_ok(i, "a1"), write_ok(i, "a1", "a2"), read_ok(i, "a3")}))),
        implies(pc_is(i, 5),
                exists({"a1", "a2", "a3", "a4"},
                       all_of({prec("a1", "a2"), prec("a2", "a3"), prec("a3", "a4"), exactly({"a1", "a2", "a3", "a4"}),
                               pick_ok(i, "a1"), write_ok(i, "a1", "a2"), read_ok(i, "a3"),
                               return_ok(i, "a1", "a3", "a4")}))),
    });
}

json to_json(const ExtendedState& s)
{
    return {{"process", s.process}, {"structure", folk::to_json(s.structure)}};
}

// ---------------------------------------------------------------------------
// Checks

Verdict check_alpha_invariant(int process, int bound)
{
    require_process(process);
    Stopwatch clock;
    Verdict verdict;
    verdict.check = "alpha-invariant";
    verdict.bound = bound;
    verdict.process = process;
    verdict.notes["scope"] = "reachable local steps";

    const Formula alpha = alpha_sentence(process);
    const ExtendedState init = initial_extended_state(process, bound);
    ++verdict.stats.states_scanned;
    if (!folk::evaluate(init.structure, alpha)) verdict.fail_with({{"initial_state", to_json(init)}});

    std::vector<ExtendedState> stack{init};
    while (!stack.empty()) {
        ExtendedState s = std::move(stack.back());
        stack.pop_back();
        const bool pre_holds = folk::evaluate(s.structure, alpha);
        for (auto& step : local_successors(s, bound)) {
            ++verdict.stats.steps_checked;
            ++verdict.stats.states_scanned;
            const bool one_new_event = step.post.event_count() == step.pre.event_count() + 1 &&
                                       is_end_extension(step.pre, step.post);
            if (!one_new_event && verdict.passed())
                verdict.fail_with({{"reason", "step is not a one-event end-extension"},
                                   {"pre", to_json(step.pre)},
                                   {"post", to_json(step.post)}});
            if (pre_holds && !folk::evaluate(step.post.structure, alpha) && verdict.passed())
                verdict.fail_with({{"pre", to_json(step.pre)}, {"post", to_json(step.post)}});
            stack.push_back(std::move(step.post));
        }
    }
    verdict.stats.elapsed_ms = clock.elapsed_ms();
    return verdict;
}

Verdict check_nonrestricted(int process, int bound)
{
    require_process(process);
    Stopwatch clock;
    Verdict verdict = check_alpha_invariant(process, bound);
    verdict.check = "nonrestricted";

    const Formula props = process_properties_sentence(process);
    const auto executions = enumerate_nonrestricted_executions(process, bound);
    verdict.stats.executions = executions.size();
    const auto expected = static_cast<std::size_t>(bound) * static_cast<std::size_t>(bound + 1);
    verdict.notes["expected_executions"] = expected;
    if (executions.size() != expected && verdict.passed())
        verdict.fail_with({{"reason", "execution count differs from bound*(bound+1)"}, {"count", executions.size()}});

    for (const auto& m : executions) {
        const bool native = satisfies_process_properties(m.structure, process);
        const bool sentence = folk::evaluate(m.structure, props);
        if ((!native || !sentence) && verdict.passed())
            verdict.fail_with({{"execution", to_json(m)}, {"native", native}, {"sentence", sentence}});
    }
    verdict.stats.elapsed_ms = clock.elapsed_ms();
    return verdict;
}

} // namespace kishon::nonrestricted
