#pragma once

// Maps terminating interleaved histories to system executions. Every step
// becomes a single-instant event, so the image precedence is a chain.

#include "kishon/executions.hpp"
#include "kishon/global_sem.hpp"
#include "kishon/verdict.hpp"

#include <optional>
#include <stdexcept>
#include <string>

namespace kishon::bridge {

class BridgeError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct BridgedExecution {
    global::History source;
    executions::SystemExecution execution;
};

/// Value carried by a step: pick, written, read or returned value.
int step_value(const global::GlobalState& post, const global::StepLabel& label);

/// Throws BridgeError if `h` is not terminating or is not an 8-step history.
BridgedExecution history_to_execution(const global::History& h);

/// First serial or regular register violation in a bridged image, or nullopt.
/// Regularity is evaluated as a first-order sentence.
std::optional<std::string> seriality_violation(const executions::SystemExecution& e, int bound);

/// Every terminating history at `bound` bridges to a system execution whose
/// registers are serial and regular, and whose image satisfies the winner
/// trichotomy exactly when the history does.
Verdict check_seriality_theorem(int bound);

} // namespace kishon::bridge
