#include "kishon/protocol.hpp"

#include <set>

namespace kishon::protocol {

using nlohmann::json;

namespace expr {

namespace {
Expression make(Expression::Kind kind, std::vector<Expression> operands, std::string local = {}, int value = 0)
{
    return Expression(std::make_shared<const Expression::Node>(
        Expression::Node{kind, std::move(local), value, std::move(operands)}));
}
} // namespace

Expression local(std::string name) { return make(Expression::Kind::Local, {}, std::move(name)); }
Expression literal(int value) { return make(Expression::Kind::Literal, {}, {}, value); }
Expression equal(Expression lhs, Expression rhs) { return make(Expression::Kind::Equal, {lhs, rhs}); }
Expression less(Expression lhs, Expression rhs) { return make(Expression::Kind::Less, {lhs, rhs}); }
Expression greater(Expression lhs, Expression rhs) { return make(Expression::Kind::Greater, {lhs, rhs}); }
Expression either(Expression lhs, Expression rhs) { return make(Expression::Kind::Either, {lhs, rhs}); }

Expression if_then_else(Expression cond, Expression then_branch, Expression else_branch)
{
    return make(Expression::Kind::IfThenElse, {cond, then_branch, else_branch});
}

} // namespace expr

int eval_expression(const Expression& e, const LocalLookup& lookup)
{
    const auto& n = e.node();
    auto arg = [&](std::size_t i) { return eval_expression(n.operands[i], lookup); };
    switch (n.kind) {
    case Expression::Kind::Local: {
        auto v = lookup(n.local);
        if (!v) throw ProtocolError("unbound local '" + n.local + "'");
        return *v;
    }
    case Expression::Kind::Literal: return n.value;
    case Expression::Kind::Equal: return arg(0) == arg(1) ? 1 : 0;
    case Expression::Kind::Less: return arg(0) < arg(1) ? 1 : 0;
    case Expression::Kind::Greater: return arg(0) > arg(1) ? 1 : 0;
    case Expression::Kind::Either: return (arg(0) != 0 || arg(1) != 0) ? 1 : 0;
    case Expression::Kind::IfThenElse: return arg(0) != 0 ? arg(1) : arg(2);
    }
    return 0;
}

int eval_expression(const Expression& e, const std::map<std::string, int>& locals)
{
    return eval_expression(e, [&](const std::string& name) -> std::optional<int> {
        auto it = locals.find(name);
        if (it == locals.end()) return std::nullopt;
        return it->second;
    });
}

std::vector<std::string> referenced_locals(const Expression& e)
{
    std::vector<std::string> out;
    auto rec = [&](auto& self, const Expression& x) -> void {
        if (x.node().kind == Expression::Kind::Local) out.push_back(x.node().local);
        for (const auto& op : x.node().operands) self(self, op);
    };
    rec(rec, e);
    return out;
}

namespace {

std::string expr_string(const Expression& e)
{
    const auto& n = e.node();
    auto op = [&](std::size_t i) { return expr_string(n.operands[i]); };
    switch (n.kind) {
    case Expression::Kind::Local: return n.local;
    case Expression::Kind::Literal: return std::to_string(n.value);
    case Expression::Kind::Equal: return op(0) + " = " + op(1);
    case Expression::Kind::Less: return op(0) + " < " + op(1);
    case Expression::Kind::Greater: return op(0) + " > " + op(1);
    case Expression::Kind::Either: return "(" + op(0) + " or " + op(1) + ")";
    case Expression::Kind::IfThenElse: return "if " + op(0) + " then " + op(1) + " else " + op(2);
    }
    return "?";
}

} // namespace

std::string describe(const Instruction& ins)
{
    return std::visit(
        [](const auto& i) -> std::string {
            using T = std::decay_t<decltype(i)>;
            if constexpr (std::is_same_v<T, PickNonZero>) return i.target + " := pick-a-number()";
            else if constexpr (std::is_same_v<T, WriteReg>) return i.reg + " := " + i.source;
            else if constexpr (std::is_same_v<T, ReadReg>) return i.target + " := " + i.reg;
            else return i.target + " := " + expr_string(i.value);
        },
        ins);
}

const LocalDecl* ProcessProgram::find_local(const std::string& name) const
{
    for (const auto& l : locals)
        if (l.name == name) return &l;
    return nullptr;
}

Expression kishon_decision(const std::string& v, const std::string& n)
{
    using namespace expr;
    return if_then_else(either(equal(local(v), literal(0)), equal(local(v), local(n))), literal(0),
                        if_then_else(less(local(v), local(n)), literal(1), literal(-1)));
}

Protocol kishon_protocol()
{
    Protocol p;
    for (int i = 0; i < 2; ++i) {
        const std::string me = std::to_string(i);
        const std::string other = std::to_string(1 - i);
        auto& prog = p.processes[static_cast<std::size_t>(i)];
        prog.locals = {{"n_" + me, LocalType::Natural, 0},
                       {"v_" + me, LocalType::Natural, 0},
                       {"val_" + me, LocalType::Sign, 0}};
        prog.owned_register = {"R_" + me, 0};
        prog.instructions = {
            PickNonZero{"n_" + me},
            WriteReg{"R_" + me, "n_" + me},
            ReadReg{"v_" + me, "R_" + other},
            ComputeReturn{"val_" + me, kishon_decision("v_" + me, "n_" + me)},
        };
    }
    return p;
}

std::vector<std::string> validate_protocol(const Protocol& p)
{
    std::vector<std::string> problems;
    std::set<std::string> registers;
    for (const auto& prog : p.processes)
        if (!registers.insert(prog.owned_register.name).second)
            problems.push_back("register " + prog.owned_register.name + " owned by both processes");

    for (std::size_t i = 0; i < p.processes.size(); ++i) {
        const auto& prog = p.processes[i];
        const std::string who = "process " + std::to_string(i);
        std::set<std::string> names;
        for (const auto& l : prog.locals) {
            if (!names.insert(l.name).second) problems.push_back(who + ": duplicate local " + l.name);
            if (registers.count(l.name)) problems.push_back(who + ": local " + l.name + " shadows a register");
        }
        if (prog.instructions.empty()) problems.push_back(who + ": empty program");

        auto need_local = [&](const std::string& name, std::size_t line) {
            if (!prog.find_local(name))
                problems.push_back(who + " line " + std::to_string(line) + ": undeclared local " + name);
        };
        for (std::size_t k = 0; k < prog.instructions.size(); ++k) {
            const std::size_t line = k + 1;
            std::visit(
                [&](const auto& ins) {
                    using T = std::decay_t<decltype(ins)>;
                    if constexpr (std::is_same_v<T, PickNonZero>) {
                        need_local(ins.target, line);
                    } else if constexpr (std::is_same_v<T, WriteReg>) {
                        need_local(ins.source, line);
                        if (ins.reg != prog.owned_register.name)
                            problems.push_back(who + " line " + std::to_string(line) + ": single-writer violation, writes " +
                                               ins.reg);
                    } else if constexpr (std::is_same_v<T, ReadReg>) {
                        need_local(ins.target, line);
                        if (!registers.count(ins.reg))
                            problems.push_back(who + " line " + std::to_string(line) + ": undeclared register " + ins.reg);
                    } else {
                        need_local(ins.target, line);
                        for (const auto& ref : referenced_locals(ins.value)) need_local(ref, line);
                    }
                },
                prog.instructions[k]);
        }
    }
    return problems;
}

bool poker_outcome_correct(int pick0, int pick1, int result0, int result1) noexcept
{
    if (pick0 < pick1) return result0 < result1;
    if (pick1 < pick0) return result1 < result0;
    return result0 == 0 && result1 == 0;
}

json to_json(const Expression& e)
{
    const auto& n = e.node();
    switch (n.kind) {
    case Expression::Kind::Local: return {{"local", n.local}};
    case Expression::Kind::Literal: return {{"literal", n.value}};
    default: break;
    }
    static const std::map<Expression::Kind, std::string> names{
        {Expression::Kind::Equal, "eq"},       {Expression::Kind::Less, "lt"},
        {Expression::Kind::Greater, "gt"},     {Expression::Kind::Either, "or"},
        {Expression::Kind::IfThenElse, "if"},
    };
    json ops = json::array();
    for (const auto& op : n.operands) ops.push_back(to_json(op));
    return {{"op", names.at(n.kind)}, {"args", std::move(ops)}};
}

json to_json(const Protocol& p)
{
    json processes = json::array();
    for (const auto& prog : p.processes) {
        json locals = json::array();
        for (const auto& l : prog.locals)
            locals.push_back({{"name", l.name},
                              {"type", l.type == LocalType::Natural ? "natural" : "sign"},
                              {"initial", l.initial}});
        json lines = json::array();
        for (const auto& ins : prog.instructions) {
            json line = std::visit(
                [](const auto& i) -> json {
                    using T = std::decay_t<decltype(i)>;
                    if constexpr (std::is_same_v<T, PickNonZero>) return {{"pick_nonzero", i.target}};
                    else if constexpr (std::is_same_v<T, WriteReg>) return {{"write", i.reg}, {"source", i.source}};
                    else if constexpr (std::is_same_v<T, ReadReg>) return {{"read", i.reg}, {"target", i.target}};
                    else return {{"compute", i.target}, {"value", to_json(i.value)}};
                },
                ins);
            line["text"] = describe(ins);
            lines.push_back(std::move(line));
        }
        processes.push_back({{"locals", std::move(locals)},
                             {"register", {{"name", prog.owned_register.name}, {"initial", prog.owned_register.initial}}},
                             {"instructions", std::move(lines)}});
    }
    return {{"processes", std::move(processes)}};
}

} // namespace kishon::protocol
