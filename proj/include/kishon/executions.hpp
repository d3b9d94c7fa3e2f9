#pragma once

// Restricted system executions: the two per-process behaviours combined with
// a register specification (serial, regular or safe), over all interval
// orders of the eight events a1..a4 (process 0) and b1..b4 (process 1).

#include "kishon/folk.hpp"
#include "kishon/orders.hpp"
#include "kishon/verdict.hpp"

#include <json.hpp>

#include <array>
#include <compare>
#include <functional>
#include <optional>
#include <set>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kishon::executions {

enum class RegisterSemantics { Serial, Regular, Safe };

std::string_view to_string(RegisterSemantics sem) noexcept;
/// Throws std::invalid_argument on unknown names.
RegisterSemantics parse_register_semantics(std::string_view text);

/// A serial read was requested but the read overlaps a write.
class SerialityViolation : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct WriteEvent {
    std::size_t event = 0;
    int value = 0;
};

/// Values a read of a single-writer register may return given the writes on
/// that register and the precedence order.
///   regular: last preceding write (or `initial` if none precedes) plus every
///            concurrent write
///   serial:  last preceding write, or `initial`; throws SerialityViolation if
///            a write is concurrent with the read
///   safe:    as serial when no write is concurrent, otherwise {0..bound}
std::set<int> allowed_read_values(std::size_t read, const orders::Precedence& order, std::span<const WriteEvent> writes,
                                  int initial, RegisterSemantics sem, int bound);

inline constexpr std::size_t kEventCount = 8;
inline constexpr std::size_t kChainLength = 4;

/// Index of line `line` (1..4) of `process` in the eight-event ground set.
constexpr std::size_t event_index(int process, int line) noexcept
{
    return orders::two_chain_element(process, line, kChainLength);
}

folk::EventId event_id(std::size_t index) noexcept;

struct SystemExecution {
    orders::Precedence order;
    std::array<int, kEventCount> values{};

    int val(int process, int line) const noexcept { return values[event_index(process, line)]; }

    /// The structure interpreting p_0, p_1, Assignment-to-n_i, Write-on-R_i,
    /// Read-of-R_{1-i}, Return_i, precedence, Val and the initial values
    /// d_R_0 = d_R_1 = 0, with Data = {-1..bound}.
    folk::FiniteStructure structure(int bound) const;

    auto operator<=>(const SystemExecution&) const = default;
};

nlohmann::json to_json(const SystemExecution& e, int bound);

/// Regularity of the single-writer register owned by `owner` as a sentence.
folk::Formula regularity_sentence(int owner);

/// Native regularity of the register owned by `owner`.
bool is_regular_register(const SystemExecution& e, int owner);
/// Native seriality: reads and writes on the register are linearly ordered and
/// every read returns the last preceding write (or the initial value).
/// Returns a description of the first violation.
std::optional<std::string> serial_register_violation(const SystemExecution& e, int owner);

/// Violations of the restricted-execution definition: system execution,
/// process partition, both per-process reducts, and regularity of both
/// registers (checked as sentences). Empty means satisfied.
std::vector<std::string> restricted_violations(const SystemExecution& e, int bound);

/// Return value rule of line 4 for the given read and pick values.
int decision_value(int read_value, int pick);

void for_each_restricted_execution(int bound, RegisterSemantics sem,
                                   const std::function<void(const SystemExecution&)>& visit);
std::vector<SystemExecution> enumerate_restricted_executions(int bound, RegisterSemantics sem);

/// Pick, read and return values satisfy the winner trichotomy.
bool satisfies_trichotomy(const SystemExecution& e) noexcept;

Verdict check_theorem33(int bound, RegisterSemantics sem);

/// Not both reads return 0.
bool check_lemma_ml(const SystemExecution& e) noexcept;
/// b2 < a3 or a2 < b3.
bool check_concurrency_lemma(const orders::Precedence& order) noexcept;
/// With Val(a1) < Val(b1): Val(b3) != 0 -> Val(b4) = 1 and Val(a3) != 0 -> Val(a4) = -1.
bool check_lemma_lm1(const SystemExecution& e) noexcept;

/// Both lemmas over regular and serial executions and the concurrency lemma
/// over every order.
Verdict check_lemmas(int bound);

} // namespace kishon::executions
