#pragma once

// Interleaving semantics over global states: steps, terminating histories,
// sentential formulas and the inductive-invariant checker.

#include "kishon/compare.hpp"
#include "kishon/protocol.hpp"
#include "kishon/verdict.hpp"

#include <json.hpp>

#include <array>
#include <compare>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace kishon::global {

class SemanticsError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class StateVar : std::uint8_t { n0, v0, val0, n1, v1, val1, R0, R1, PC0, PC1 };
inline constexpr std::size_t kStateVarCount = 10;
inline constexpr int kFinalLine = 5;

std::string_view name(StateVar v) noexcept;
std::optional<StateVar> parse_state_var(std::string_view text) noexcept;
constexpr StateVar pc_of(int process) noexcept { return process == 0 ? StateVar::PC0 : StateVar::PC1; }

struct GlobalState {
    std::array<int, kStateVarCount> values{};

    int operator[](StateVar v) const noexcept { return values[static_cast<std::size_t>(v)]; }
    int& operator[](StateVar v) noexcept { return values[static_cast<std::size_t>(v)]; }

    /// PC_0 = PC_1 = 1, everything else 0.
    static GlobalState initial() noexcept;
    bool is_final() const noexcept { return (*this)[StateVar::PC0] == kFinalLine && (*this)[StateVar::PC1] == kFinalLine; }

    auto operator<=>(const GlobalState&) const = default;
};

/// A (k_i, (k+1)_i) step: process i executes line k.
struct StepLabel {
    int process = 0;
    int line = 1;

    std::string to_string() const; ///< "3_0" for process 0 at line 3
    auto operator<=>(const StepLabel&) const = default;
};

struct GlobalStep {
    GlobalState pre;
    GlobalState post;
    StepLabel label;
};

struct History {
    std::vector<GlobalState> states;
    std::vector<StepLabel> labels; ///< labels[j] names the step (states[j], states[j+1])

    bool terminating() const { return !states.empty() && states.back().is_final(); }
};

nlohmann::json to_json(const GlobalState& s);
nlohmann::json to_json(const GlobalStep& step);
nlohmann::json to_json(const History& h);

/// Interleaving semantics of a two-process protocol whose locals and
/// registers are drawn from the fixed state-variable schema, with
/// pick-a-number ranging over {1..bound}.
class System {
public:
    System(const protocol::Protocol& p, int bound);

    int bound() const noexcept { return bound_; }
    const protocol::Protocol& protocol() const noexcept { return protocol_; }

    /// Inclusive type range of a state variable.
    std::pair<int, int> type_range(StateVar v) const noexcept;
    bool is_well_typed(const GlobalState& s) const noexcept;

    std::vector<GlobalStep> successors(const GlobalState& s) const;
    /// Whether the pair satisfies the step definition for its label.
    bool is_step(const GlobalStep& step) const;

    void for_each_well_typed_state(const std::function<void(const GlobalState&)>& visit) const;
    void for_each_history(const std::function<void(const History&)>& visit) const;

private:
    struct Line {
        enum class Op { Pick, Write, Read, Compute } op = Op::Pick;
        StateVar target{};
        StateVar source{};
        std::optional<protocol::Expression> value;
    };

    void apply(const GlobalState& s, int process, std::vector<GlobalStep>& out) const;
    int compute(const Line& line, const GlobalState& s) const;

    protocol::Protocol protocol_;
    int bound_;
    std::array<std::vector<Line>, 2> lines_;
    std::array<std::pair<int, int>, kStateVarCount> types_{};
};

std::vector<GlobalStep> successors(const GlobalState& s, const protocol::Protocol& p, int bound);
std::vector<History> enumerate_histories(const protocol::Protocol& p, int bound);

// ---------------------------------------------------------------------------
// Sentential formulas

struct Operand {
    std::optional<StateVar> var;
    int literal = 0;
};

/// Throws SemanticsError for names outside the state-variable schema.
Operand var(std::string_view name);
Operand lit(int value);

class SententialFormula {
public:
    enum class Kind { Const, Atom, Not, And, Or, Implies };
    struct Node {
        Kind kind = Kind::Const;
        bool constant = true;
        Operand lhs, rhs;
        CmpOp op = CmpOp::Eq;
        std::vector<SententialFormula> children;
    };

    SententialFormula();
    explicit SententialFormula(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

    const Node& node() const { return *node_; }
    std::string to_string() const;

private:
    std::shared_ptr<const Node> node_;
};

namespace sf {
SententialFormula constant(bool value);
SententialFormula atom(Operand lhs, CmpOp op, Operand rhs);
SententialFormula operator!(const SententialFormula& f);
SententialFormula operator&&(const SententialFormula& lhs, const SententialFormula& rhs);
SententialFormula operator||(const SententialFormula& lhs, const SententialFormula& rhs);
SententialFormula implies(const SententialFormula& lhs, const SententialFormula& rhs);
SententialFormula all_of(std::vector<SententialFormula> parts);
} // namespace sf

bool eval_sentential(const SententialFormula& f, const GlobalState& s);

/// Named conjuncts alpha1..alpha5, beta1..beta5, gamma, tau; tau renders the
/// naturals as {0..bound}.
std::vector<std::pair<std::string, SententialFormula>> phi_components(int bound);
SententialFormula phi_invariant(int bound);
/// The type conjunction on its own.
SententialFormula tau(int bound);

enum class InvariantScope {
    AllWellTyped, ///< every well-typed state satisfying the formula (definition of record)
    Reachable,    ///< states reachable from the initial state only
};

/// Checks the initial state, then every step out of every in-scope state
/// that satisfies `f`. A failure carries the offending step.
Verdict check_inductive_invariant(const SententialFormula& f, const protocol::Protocol& p, int bound,
                                  InvariantScope scope = InvariantScope::AllWellTyped);

/// Every well-typed state with phi and both processes finished satisfies
/// n_0=n_1 -> val_0=val_1=0 and n_i<n_{1-i} -> val_i<val_{1-i}.
Verdict check_final_state_lemma(int bound);

/// Final-state trichotomy over every terminating history, plus the exact
/// count of interleavings per pick pair.
Verdict check_theorem1(int bound);

/// Final-state implications over every terminating history, combined with
/// the final-state lemma.
Verdict check_theorem2(int bound);

} // namespace kishon::global
