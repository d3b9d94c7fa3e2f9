#pragma once

// Per-process semantics with no assumptions on the registers. A state is a
// finite structure recording every event so far together with the process's
// local constants (n_i, v_i, val_i, PC_i). Registers occur only in predicate
// names; no state holds a register value.

#include "kishon/folk.hpp"
#include "kishon/protocol.hpp"
#include "kishon/verdict.hpp"

#include <json.hpp>

#include <string>
#include <vector>

namespace kishon::nonrestricted {

struct ExtendedState {
    int process = 0;
    folk::FiniteStructure structure;

    int pc() const;
    int constant(const std::string& name) const;
    std::size_t event_count() const noexcept { return structure.events.size(); }

    bool operator==(const ExtendedState&) const = default;
};

struct LocalStep {
    ExtendedState pre;
    ExtendedState post;
    int line = 1; ///< the (line, line+1) step
};

/// No events, PC = 1, every other constant at its declared initial value.
ExtendedState initial_extended_state(int process, int bound,
                                     const protocol::Protocol& p = protocol::kishon_protocol());

/// `n` end-extends `m`: m's events are an initial section of n's precedence
/// and n restricted to those events is m.
bool is_end_extension(const ExtendedState& m, const ExtendedState& n);

/// Picks branch over {1..bound}; reads branch over {0..bound} with no
/// relation to any write. Each step appends one maximal event.
std::vector<LocalStep> local_successors(const ExtendedState& s, int bound,
                                        const protocol::Protocol& p = protocol::kishon_protocol());

/// Final states (PC = 5) of all maximal local histories.
std::vector<ExtendedState> enumerate_nonrestricted_executions(int process, int bound,
                                                              const protocol::Protocol& p = protocol::kishon_protocol());

/// Pick, write, read and return properties of one complete local run,
/// checked directly.
bool satisfies_process_properties(const folk::FiniteStructure& m, int process);
/// The same properties as a first-order sentence.
folk::Formula process_properties_sentence(int process);

/// Conjunction of the per-PC inductive properties.
folk::Formula alpha_sentence(int process);

/// alpha holds initially and is preserved along every reachable local step;
/// every step is a one-event end-extension.
Verdict check_alpha_invariant(int process, int bound);

/// alpha invariance plus: exactly bound*(bound+1) executions, each
/// satisfying the properties both natively and as a sentence.
Verdict check_nonrestricted(int process, int bound);

nlohmann::json to_json(const ExtendedState& s);

} // namespace kishon::nonrestricted
