#pragma once

// Finite two-sorted first-order structures (sorts Event and Data) and a
// satisfaction checker for sentences quantifying over the Event sort.

#include "kishon/compare.hpp"

#include <json.hpp>

#include <compare>
#include <initializer_list>
#include <map>
#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kishon::folk {

class EvaluationError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Opaque event label. Process 0 events print as a1, a2, ..., process 1
/// events as b1, b2, ...; anything else as e<process>_<index>.
struct EventId {
    int process = 0;
    int index = 0;

    std::string label() const;
    static EventId parse(std::string_view text);

    auto operator<=>(const EventId&) const = default;
};

struct Signature {
    std::set<std::string> event_predicates;
    bool has_precedence = true;
    std::set<std::string> data_constants;
};

/// Interpretation of a signature. Data is the bounded interval
/// {data_min, ..., data_max}, standing in for the naturals together with -1.
struct FiniteStructure {
    std::vector<EventId> events;
    int data_min = -1;
    int data_max = 0;
    std::map<std::string, std::set<EventId>> predicates;
    std::set<std::pair<EventId, EventId>> precedence;
    std::map<EventId, int> val;
    std::map<std::string, int> constants;

    bool has_event(const EventId& e) const;
    bool precedes(const EventId& lhs, const EventId& rhs) const;
    bool holds(std::string_view predicate, const EventId& e) const;

    bool operator==(const FiniteStructure&) const = default;
};

Signature signature_of(const FiniteStructure& s);

/// Empty result means the structure is well formed.
std::vector<std::string> check_structure(const FiniteStructure& s);

/// Strict partial order with the Russell-Wiener property. Finiteness is
/// automatic for FiniteStructure.
bool is_system_execution(const FiniteStructure& s);

/// Restriction to the events satisfying `sort_predicate`. Predicates,
/// precedence and Val are restricted; constants and Data are kept.
FiniteStructure reduct(const FiniteStructure& s, std::string_view sort_predicate);

nlohmann::json to_json(const FiniteStructure& s);
FiniteStructure structure_from_json(const nlohmann::json& doc);

// ---------------------------------------------------------------------------
// Formulas

/// Data-sort term: Val(x), a named constant, or an integer literal.
struct DataTerm {
    enum class Kind { ValOf, Constant, Literal };
    Kind kind = Kind::Literal;
    std::string name;
    int literal = 0;
};

class Formula {
public:
    struct Node;

    Formula();
    explicit Formula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    const Node& node() const { return *node_; }
    std::string to_string() const;

private:
    std::shared_ptr<const Node> node_;
};

struct Formula::Node {
    enum class Kind { True, False, Pred, Precedes, SameEvent, Compare, Not, And, Or, Implies, ForAll, Exists };
    Kind kind = Kind::True;
    std::string name;            // predicate name, or bound variable for quantifiers
    std::string lhs_var, rhs_var; // event variables for Pred/Precedes/SameEvent
    DataTerm lhs_term, rhs_term;
    CmpOp op = CmpOp::Eq;
    std::vector<Formula> children;
};

using Assignment = std::map<std::string, EventId>;

/// Tarskian satisfaction; quantifiers range over `s.events`.
/// Throws EvaluationError on free variables missing from `env`, unknown
/// predicates or unknown constants.
bool evaluate(const FiniteStructure& s, const Formula& f, const Assignment& env = {});

std::set<std::string> free_variables(const Formula& f);

namespace fo {

Formula truth();
Formula falsity();
Formula pred(std::string name, std::string var);
Formula prec(std::string lhs, std::string rhs);
Formula same(std::string lhs, std::string rhs);
/// Neither precedes the other; an event is concurrent with itself.
Formula concurrent(const std::string& lhs, const std::string& rhs);

DataTerm val(std::string var);
DataTerm constant(std::string name);
DataTerm lit(int value);
Formula cmp(DataTerm lhs, CmpOp op, DataTerm rhs);

Formula operator!(const Formula& f);
Formula operator&&(const Formula& lhs, const Formula& rhs);
Formula operator||(const Formula& lhs, const Formula& rhs);
Formula implies(const Formula& lhs, const Formula& rhs);
Formula all_of(std::vector<Formula> parts);
Formula any_of(std::vector<Formula> parts);

Formula forall(std::initializer_list<std::string> vars, const Formula& body);
Formula exists(std::initializer_list<std::string> vars, const Formula& body);

} // namespace fo

/// forall a,b,c,d (a<b & c<d & !(c<b) -> a<d)
Formula russell_wiener_sentence();
/// Irreflexive and transitive precedence.
Formula strict_partial_order_sentence();

} // namespace kishon::folk
