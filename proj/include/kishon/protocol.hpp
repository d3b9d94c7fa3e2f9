#pragma once

// Straight-line two-process protocol IR. The engines in global_sem and
// nonrestricted interpret this IR; kishon_protocol() is the bundled instance.

#include <json.hpp>

#include <array>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace kishon::protocol {

class ProtocolError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Deterministic integer expression. Comparisons and disjunction yield 0/1.
class Expression {
public:
    enum class Kind { Local, Literal, Equal, Less, Greater, Either, IfThenElse };
    struct Node {
        Kind kind = Kind::Literal;
        std::string local;
        int value = 0;
        std::vector<Expression> operands;
    };

    explicit Expression(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    const Node& node() const { return *node_; }

private:
    std::shared_ptr<const Node> node_;
};

namespace expr {
Expression local(std::string name);
Expression literal(int value);
Expression equal(Expression lhs, Expression rhs);
Expression less(Expression lhs, Expression rhs);
Expression greater(Expression lhs, Expression rhs);
Expression either(Expression lhs, Expression rhs);
Expression if_then_else(Expression cond, Expression then_branch, Expression else_branch);
} // namespace expr

/// Returns nullopt for names it does not know.
using LocalLookup = std::function<std::optional<int>(const std::string&)>;

/// Throws ProtocolError on an unbound local.
int eval_expression(const Expression& e, const LocalLookup& lookup);
int eval_expression(const Expression& e, const std::map<std::string, int>& locals);

/// Every local referenced by `e`.
std::vector<std::string> referenced_locals(const Expression& e);

struct PickNonZero {
    std::string target;
};
struct WriteReg {
    std::string reg;
    std::string source;
};
struct ReadReg {
    std::string target;
    std::string reg;
};
struct ComputeReturn {
    std::string target;
    Expression value;
};

using Instruction = std::variant<PickNonZero, WriteReg, ReadReg, ComputeReturn>;

std::string describe(const Instruction& ins);

enum class LocalType {
    Natural, ///< {0, ..., N}
    Sign,    ///< {-1, 0, 1}
};

struct LocalDecl {
    std::string name;
    LocalType type = LocalType::Natural;
    int initial = 0;
};

struct RegisterDecl {
    std::string name;
    int initial = 0;
};

struct ProcessProgram {
    std::vector<LocalDecl> locals;
    RegisterDecl owned_register;
    /// Line k of the program is instructions[k-1]; line size()+1 is the end.
    std::vector<Instruction> instructions;

    const LocalDecl* find_local(const std::string& name) const;
};

struct Protocol {
    std::array<ProcessProgram, 2> processes;
};

/// The decision at line 4 of process i:
/// if (v = 0 or v = n) then 0 elseif v < n then 1 else -1.
Expression kishon_decision(const std::string& v, const std::string& n);

/// Both players' four-line programs; registers R_0, R_1 and all locals start at 0.
Protocol kishon_protocol();

/// Empty result means the protocol is well formed.
std::vector<std::string> validate_protocol(const Protocol& p);

/// Trichotomy for one play: the larger pick wins, equal picks both return 0.
bool poker_outcome_correct(int pick0, int pick1, int result0, int result1) noexcept;

nlohmann::json to_json(const Expression& e);
nlohmann::json to_json(const Protocol& p);

} // namespace kishon::protocol
