#include "kishon/global_sem.hpp"

#include <map>
#include <set>
#include <sstream>

namespace kishon::global {

using nlohmann::json;
using protocol::Protocol;

namespace {

constexpr std::array<std::string_view, kStateVarCount> kNames{"n_0", "v_0", "val_0", "n_1", "v_1",
                                                              "val_1", "R_0", "R_1", "PC_0", "PC_1"};

constexpr std::array<StateVar, kStateVarCount> kAllVars{StateVar::n0,  StateVar::v0, StateVar::val0, StateVar::n1,
                                                        StateVar::v1,  StateVar::val1, StateVar::R0, StateVar::R1,
                                                        StateVar::PC0, StateVar::PC1};

} // namespace

std::string_view name(StateVar v) noexcept { return kNames[static_cast<std::size_t>(v)]; }

std::optional<StateVar> parse_state_var(std::string_view text) noexcept
{
    for (std::size_t i = 0; i < kNames.size(); ++i)
        if (kNames[i] == text) return static_cast<StateVar>(i);
    return std::nullopt;
}

GlobalState GlobalState::initial() noexcept
{
    GlobalState s;
    s[StateVar::PC0] = 1;
    s[StateVar::PC1] = 1;
    return s;
}

std::string StepLabel::to_string() const { return std::to_string(line) + "_" + std::to_string(process); }

json to_json(const GlobalState& s)
{
    json doc = json::object();
    for (auto v : kAllVars) doc[std::string(name(v))] = s[v];
    return doc;
}

json to_json(const GlobalStep& step)
{
    return {{"label", "(" + step.label.to_string() + "," + std::to_string(step.label.line + 1) + "_" +
                          std::to_string(step.label.process) + ")"},
            {"pre", to_json(step.pre)},
            {"post", to_json(step.post)}};
}

json to_json(const History& h)
{
    json labels = json::array();
    for (const auto& l : h.labels) labels.push_back(l.to_string());
    json doc{{"steps", std::move(labels)}};
    if (!h.states.empty()) doc["final"] = to_json(h.states.back());
    return doc;
}

// ---------------------------------------------------------------------------
// System

namespace {

StateVar schema_var(const std::string& name)
{
    auto v = parse_state_var(name);
    if (!v) throw SemanticsError("'" + name + "' is not a global state variable");
    if (*v == StateVar::PC0 || *v == StateVar::PC1)
        throw SemanticsError("program counters cannot be used as locals");
    return *v;
}

} // namespace

System::System(const Protocol& p, int bound) : protocol_(p), bound_(bound)
{
    if (bound < 1) throw SemanticsError("bound must be at least 1");
    if (auto problems = protocol::validate_protocol(p); !problems.empty())
        throw SemanticsError("invalid protocol: " + problems.front());

    for (auto v : kAllVars) types_[static_cast<std::size_t>(v)] = {0, bound};
    types_[static_cast<std::size_t>(StateVar::PC0)] = {1, kFinalLine};
    types_[static_cast<std::size_t>(StateVar::PC1)] = {1, kFinalLine};

    for (int i = 0; i < 2; ++i) {
        const auto& prog = p.processes[static_cast<std::size_t>(i)];
        if (prog.instructions.size() != static_cast<std::size_t>(kFinalLine - 1))
            throw SemanticsError("each process must have exactly four lines");
        for (const auto& decl : prog.locals) {
            auto v = schema_var(decl.name);
            types_[static_cast<std::size_t>(v)] =
                decl.type == protocol::LocalType::Sign ? std::pair{-1, 1} : std::pair{0, bound};
        }
        for (const auto& ins : prog.instructions) {
            Line line;
            std::visit(
                [&](const auto& x) {
                    using T = std::decay_t<decltype(x)>;
                    if constexpr (std::is_same_v<T, protocol::PickNonZero>) {
                        line.op = Line::Op::Pick;
                        line.target = schema_var(x.target);
                    } else if constexpr (std::is_same_v<T, protocol::WriteReg>) {
                        line.op = Line::Op::Write;
                        line.target = schema_var(x.reg);
                        line.source = schema_var(x.source);
                    } else if constexpr (std::is_same_v<T, protocol::ReadReg>) {
                        line.op = Line::Op::Read;
                        line.target = schema_var(x.target);
                        line.source = schema_var(x.reg);
                    } else {
                        line.op = Line::Op::Compute;
                        line.target = schema_var(x.target);
                        line.value = x.value;
                    }
                },
                ins);
            lines_[static_cast<std::size_t>(i)].push_back(std::move(line));
        }
    }
}

std::pair<int, int> System::type_range(StateVar v) const noexcept { return types_[static_cast<std::size_t>(v)]; }

bool System::is_well_typed(const GlobalState& s) const noexcept
{
    for (auto v : kAllVars) {
        auto [lo, hi] = type_range(v);
        if (s[v] < lo || s[v] > hi) return false;
    }
    return true;
}

int System::compute(const Line& line, const GlobalState& s) const
{
    return protocol::eval_expression(*line.value, [&](const std::string& local) -> std::optional<int> {
        if (auto v = parse_state_var(local)) return s[*v];
        return std::nullopt;
    });
}

void System::apply(const GlobalState& s, int process, std::vector<GlobalStep>& out) const
{
    const int pc = s[pc_of(process)];
    if (pc >= kFinalLine) return;
    const Line& line = lines_[static_cast<std::size_t>(process)][static_cast<std::size_t>(pc - 1)];
    GlobalState t = s;
    t[pc_of(process)] = pc + 1;
    const StepLabel label{process, pc};
    switch (line.op) {
    case Line::Op::Pick:
        for (int value = 1; value <= bound_; ++value) {
            t[line.target] = value;
            out.push_back({s, t, label});
        }
        return;
    case Line::Op::Write:
    case Line::Op::Read: t[line.target] = s[line.source]; break;
    case Line::Op::Compute: t[line.target] = compute(line, s); break;
    }
    out.push_back({s, t, label});
}

std::vector<GlobalStep> System::successors(const GlobalState& s) const
{
    std::vector<GlobalStep> out;
    apply(s, 0, out);
    apply(s, 1, out);
    return out;
}

bool System::is_step(const GlobalStep& step) const
{
    const auto& [pre, post, label] = step;
    if (label.process < 0 || label.process > 1) return false;
    if (label.line < 1 || label.line >= kFinalLine) return false;
    const StateVar pc = pc_of(label.process);
    if (pre[pc] != label.line || post[pc] != label.line + 1) return false;

    const Line& line = lines_[static_cast<std::size_t>(label.process)][static_cast<std::size_t>(label.line - 1)];
    for (auto v : kAllVars)
        if (v != pc && v != line.target && pre[v] != post[v]) return false;

    switch (line.op) {
    case Line::Op::Pick: return post[line.target] >= 1 && post[line.target] <= bound_;
    case Line::Op::Write:
    case Line::Op::Read: return post[line.target] == pre[line.source];
    case Line::Op::Compute: return post[line.target] == compute(line, pre);
    }
    return false;
}

void System::for_each_well_typed_state(const std::function<void(const GlobalState&)>& visit) const
{
    GlobalState s;
    for (auto v : kAllVars) s[v] = type_range(v).first;
    while (true) {
        visit(s);
        std::size_t k = 0;
        for (; k < kStateVarCount; ++k) {
            auto v = kAllVars[k];
            if (s[v] < type_range(v).second) {
                ++s[v];
                break;
            }
            s[v] = type_range(v).first;
        }
        if (k == kStateVarCount) return;
    }
}

void System::for_each_history(const std::function<void(const History&)>& visit) const
{
    History h;
    h.states.push_back(GlobalState::initial());
    auto rec = [&](auto& self) -> void {
        const GlobalState& s = h.states.back();
        if (s.is_final()) {
            visit(h);
            return;
        }
        for (const auto& step : successors(s)) {
            h.states.push_back(step.post);
            h.labels.push_back(step.label);
            self(self);
            h.states.pop_back();
            h.labels.pop_back();
        }
    };
    rec(rec);
}

std::vector<GlobalStep> successors(const GlobalState& s, const Protocol& p, int bound)
{
    return System(p, bound).successors(s);
}

std::vector<History> enumerate_histories(const Protocol& p, int bound)
{
    std::vector<History> out;
    System(p, bound).for_each_history([&](const History& h) { out.push_back(h); });
    return out;
}

// ---------------------------------------------------------------------------
// Sentential formulas

Operand var(std::string_view text)
{
    auto v = parse_state_var(text);
    if (!v) throw SemanticsError("undeclared state variable '" + std::string(text) + "'");
    return {v, 0};
}

Operand lit(int value) { return {std::nullopt, value}; }

SententialFormula::SententialFormula() : node_(std::make_shared<const Node>()) {}

namespace {

using SKind = SententialFormula::Kind;

SententialFormula make(SententialFormula::Node n)
{
    return SententialFormula(std::make_shared<const SententialFormula::Node>(std::move(n)));
}

std::string operand_string(const Operand& o)
{
    return o.var ? std::string(name(*o.var)) : std::to_string(o.literal);
}

void write(std::ostream& out, const SententialFormula& f)
{
    const auto& n = f.node();
    auto join = [&](std::string_view sep) {
        out << '(';
        for (std::size_t i = 0; i < n.children.size(); ++i) {
            if (i) out << sep;
            write(out, n.children[i]);
        }
        out << ')';
    };
    switch (n.kind) {
    case SKind::Const: out << (n.constant ? "true" : "false"); break;
    case SKind::Atom: out << operand_string(n.lhs) << ' ' << symbol(n.op) << ' ' << operand_string(n.rhs); break;
    case SKind::Not:
        out << "!(";
        write(out, n.children[0]);
        out << ')';
        break;
    case SKind::And: join(" & "); break;
    case SKind::Or: join(" | "); break;
    case SKind::Implies: join(" -> "); break;
    }
}

inline int operand_value(const Operand& o, const GlobalState& s) { return o.var ? s[*o.var] : o.literal; }

} // namespace

std::string SententialFormula::to_string() const
{
    std::ostringstream out;
    write(out, *this);
    return out.str();
}

namespace sf {

SententialFormula constant(bool value)
{
    SententialFormula::Node n;
    n.constant = value;
    return make(std::move(n));
}

SententialFormula atom(Operand lhs, CmpOp op, Operand rhs)
{
    SententialFormula::Node n;
    n.kind = SKind::Atom;
    n.lhs = lhs;
    n.rhs = rhs;
    n.op = op;
    return make(std::move(n));
}

SententialFormula operator!(const SententialFormula& f)
{
    SententialFormula::Node n;
    n.kind = SKind::Not;
    n.children = {f};
    return make(std::move(n));
}

SententialFormula operator&&(const SententialFormula& lhs, const SententialFormula& rhs) { return all_of({lhs, rhs}); }

SententialFormula operator||(const SententialFormula& lhs, const SententialFormula& rhs)
{
    SententialFormula::Node n;
    n.kind = SKind::Or;
    n.children = {lhs, rhs};
    return make(std::move(n));
}

SententialFormula implies(const SententialFormula& lhs, const SententialFormula& rhs)
{
    SententialFormula::Node n;
    n.kind = SKind::Implies;
    n.children = {lhs, rhs};
    return make(std::move(n));
}

SententialFormula all_of(std::vector<SententialFormula> parts)
{
    SententialFormula::Node n;
    n.kind = SKind::And;
    for (auto& p : parts) {
        if (p.node().kind == SKind::And) {
            for (const auto& c : p.node().children) n.children.push_back(c);
        } else {
            n.children.push_back(std::move(p));
        }
    }
    return make(std::move(n));
}

} // namespace sf

bool eval_sentential(const SententialFormula& f, const GlobalState& s)
{
    const auto& n = f.node();
    switch (n.kind) {
    case SKind::Const: return n.constant;
    case SKind::Atom: return compare(operand_value(n.lhs, s), n.op, operand_value(n.rhs, s));
    case SKind::Not: return !eval_sentential(n.children[0], s);
    case SKind::And:
        for (const auto& c : n.children)
            if (!eval_sentential(c, s)) return false;
        return true;
    case SKind::Or:
        for (const auto& c : n.children)
            if (eval_sentential(c, s)) return true;
        return false;
    case SKind::Implies: return !eval_sentential(n.children[0], s) || eval_sentential(n.children[1], s);
    }
    return false;
}

// ---------------------------------------------------------------------------
// phi = alpha & beta & gamma & tau

namespace {

SententialFormula cmp(std::string_view lhs, CmpOp op, int rhs) { return sf::atom(var(lhs), op, lit(rhs)); }
SententialFormula cmp(std::string_view lhs, CmpOp op, std::string_view rhs) { return sf::atom(var(lhs), op, var(rhs)); }

std::vector<std::pair<std::string, SententialFormula>> player_conjuncts(int i, std::string_view prefix)
{
    using sf::implies;
    using sf::operator&&;
    const std::string me = std::to_string(i), other = std::to_string(1 - i);
    const std::string pc = "PC_" + me, n = "n_" + me, v = "v_" + me, val = "val_" + me, reg = "R_" + me,
                      their_reg = "R_" + other;
    const std::string p(prefix);
    return {
        {p + "1", implies(cmp(pc, CmpOp::Ge, 2), cmp(n, CmpOp::Gt, 0))},
        {p + "2", implies(cmp(pc, CmpOp::Le, 2), cmp(reg, CmpOp::Eq, 0))},
        {p + "3", implies(cmp(pc, CmpOp::Ge, 3), cmp(reg, CmpOp::Eq, n))},
        {p + "4", implies(cmp(v, CmpOp::Ne, 0), cmp(v, CmpOp::Eq, their_reg))},
        {p + "5", implies(cmp(pc, CmpOp::Eq, 5),
                          implies(cmp(v, CmpOp::Eq, 0), cmp(val, CmpOp::Eq, 0)) &&
                              implies(cmp(v, CmpOp::Eq, n), cmp(val, CmpOp::Eq, 0)) &&
                              implies(cmp(v, CmpOp::Gt, 0) && cmp(v, CmpOp::Lt, n), cmp(val, CmpOp::Eq, 1)) &&
                              implies(cmp(v, CmpOp::Gt, n), cmp(val, CmpOp::Eq, -1)))},
    };
}

} // namespace

SententialFormula tau(int bound)
{
    std::vector<SententialFormula> parts;
    auto range = [&](std::string_view v, int lo, int hi) {
        parts.push_back(cmp(v, CmpOp::Ge, lo));
        parts.push_back(cmp(v, CmpOp::Le, hi));
    };
    for (std::string_view v : {"n_0", "v_0", "n_1", "v_1", "R_0", "R_1"}) range(v, 0, bound);
    for (std::string_view v : {"val_0", "val_1"}) range(v, -1, 1);
    for (std::string_view v : {"PC_0", "PC_1"}) range(v, 1, kFinalLine);
    return sf::all_of(std::move(parts));
}

std::vector<std::pair<std::string, SententialFormula>> phi_components(int bound)
{
    using sf::operator&&;
    using sf::operator||;
    auto out = player_conjuncts(0, "alpha");
    for (auto& c : player_conjuncts(1, "beta")) out.push_back(std::move(c));
    out.emplace_back("gamma", sf::implies(cmp("PC_0", CmpOp::Ge, 4) && cmp("PC_1", CmpOp::Ge, 4),
                                          cmp("v_0", CmpOp::Eq, "R_1") || cmp("v_1", CmpOp::Eq, "R_0")));
    out.emplace_back("tau", tau(bound));
    return out;
}

SententialFormula phi_invariant(int bound)
{
    std::vector<SententialFormula> parts;
    for (auto& [_, f] : phi_components(bound)) parts.push_back(f);
    return sf::all_of(std::move(parts));
}

// ---------------------------------------------------------------------------
// Checks

namespace {

Verdict make_verdict(std::string check, int bound)
{
    Verdict v;
    v.check = std::move(check);
    v.bound = bound;
    return v;
}

} // namespace

Verdict check_inductive_invariant(const SententialFormula& f, const Protocol& p, int bound, InvariantScope scope)
{
    Stopwatch clock;
    Verdict verdict = make_verdict("invariant", bound);
    verdict.notes["formula"] = f.to_string();
    verdict.notes["scope"] = scope == InvariantScope::AllWellTyped ? "all-well-typed" : "reachable";
    verdict.notes["naturals_rendered_as"] = "{0.." + std::to_string(bound) + "}";

    const System system(p, bound);
    const GlobalState init = GlobalState::initial();
    if (!eval_sentential(f, init)) {
        verdict.fail_with({{"initial_state", to_json(init)}});
        verdict.stats.elapsed_ms = clock.elapsed_ms();
        return verdict;
    }

    auto check_state = [&](const GlobalState& s) {
        ++verdict.stats.states_scanned;
        if (!eval_sentential(f, s)) return;
        for (const auto& step : system.successors(s)) {
            ++verdict.stats.steps_checked;
            if (!eval_sentential(f, step.post) && verdict.passed()) verdict.fail_with({{"step", to_json(step)}});
        }
    };

    if (scope == InvariantScope::AllWellTyped) {
        system.for_each_well_typed_state(check_state);
    } else {
        std::set<GlobalState> seen{init};
        std::vector<GlobalState> frontier{init};
        while (!frontier.empty()) {
            GlobalState s = frontier.back();
            frontier.pop_back();
            check_state(s);
            for (const auto& step : system.successors(s))
                if (seen.insert(step.post).second) frontier.push_back(step.post);
        }
    }
    verdict.stats.elapsed_ms = clock.elapsed_ms();
    return verdict;
}

Verdict check_final_state_lemma(int bound)
{
    Stopwatch clock;
    Verdict verdict = make_verdict("final-state-lemma", bound);
    const System system(protocol::kishon_protocol(), bound);
    const SententialFormula phi = phi_invariant(bound);
    std::uint64_t qualifying = 0;

    system.for_each_well_typed_state([&](const GlobalState& s) {
        ++verdict.stats.states_scanned;
        if (!s.is_final() || !eval_sentential(phi, s)) return;
        ++qualifying;
        const int n0 = s[StateVar::n0], n1 = s[StateVar::n1];
        const int val0 = s[StateVar::val0], val1 = s[StateVar::val1];
        const bool equal_case = n0 != n1 || (val0 == 0 && val1 == 0);
        const bool less0 = !(n0 < n1) || val0 < val1;
        const bool less1 = !(n1 < n0) || val1 < val0;
        if (!(equal_case && less0 && less1) && verdict.passed()) verdict.fail_with({{"state", to_json(s)}});
    });
    verdict.notes["qualifying_states"] = qualifying;
    verdict.stats.elapsed_ms = clock.elapsed_ms();
    return verdict;
}

Verdict check_theorem1(int bound)
{
    Stopwatch clock;
    Verdict verdict = make_verdict("theorem1", bound);
    const System system(protocol::kishon_protocol(), bound);
    std::map<std::pair<int, int>, std::uint64_t> per_pick;

    system.for_each_history([&](const History& h) {
        ++verdict.stats.histories;
        verdict.stats.states_scanned += h.states.size();
        const auto& s = h.states.back();
        const int n0 = s[StateVar::n0], n1 = s[StateVar::n1];
        ++per_pick[{n0, n1}];
        if (!protocol::poker_outcome_correct(n0, n1, s[StateVar::val0], s[StateVar::val1]) && verdict.passed())
            verdict.fail_with({{"history", to_json(h)}});
    });

    constexpr std::uint64_t kInterleavings = 70; // C(8,4)
    bool counts_ok = per_pick.size() == static_cast<std::size_t>(bound * bound);
    for (const auto& [_, count] : per_pick) counts_ok = counts_ok && count == kInterleavings;
    verdict.notes["pick_pairs"] = per_pick.size();
    verdict.notes["histories_per_pick_pair"] = counts_ok ? json(kInterleavings) : json("irregular");
    if (!counts_ok && verdict.passed()) verdict.fail_with({{"reason", "history count per pick pair is not 70"}});
    verdict.stats.elapsed_ms = clock.elapsed_ms();
    return verdict;
}

Verdict check_theorem2(int bound)
{
    Stopwatch clock;
    Verdict verdict = make_verdict("theorem2", bound);
    const System system(protocol::kishon_protocol(), bound);

    system.for_each_history([&](const History& h) {
        ++verdict.stats.histories;
        verdict.stats.states_scanned += h.states.size();
        const auto& s = h.states.back();
        const int n[2] = {s[StateVar::n0], s[StateVar::n1]};
        const int val[2] = {s[StateVar::val0], s[StateVar::val1]};
        bool ok = n[0] != n[1] || val[0] == val[1];
        for (int i = 0; i < 2; ++i) ok = ok && (!(n[i] < n[1 - i]) || val[i] < val[1 - i]);
        if (!ok && verdict.passed()) verdict.fail_with({{"history", to_json(h)}});
    });

    Verdict lemma = check_final_state_lemma(bound);
    verdict.stats.states_scanned += lemma.stats.states_scanned;
    verdict.notes["lemma_qualifying_states"] = lemma.notes["qualifying_states"];
    if (!lemma.passed() && verdict.passed()) verdict.fail_with({{"lemma", *lemma.counterexample}});
    verdict.stats.elapsed_ms = clock.elapsed_ms();
    return verdict;
}

} // namespace kishon::global
