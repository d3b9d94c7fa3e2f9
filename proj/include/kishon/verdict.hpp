#pragma once

#include <json.hpp>

#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace kishon {

enum class Outcome { Pass, Fail, Error };

std::string_view to_string(Outcome outcome) noexcept;
Outcome outcome_from_string(std::string_view text);

struct Stats {
    std::uint64_t states_scanned = 0;
    std::uint64_t steps_checked = 0;
    std::uint64_t histories = 0;
    std::uint64_t orders = 0;
    std::uint64_t executions = 0;
    std::int64_t elapsed_ms = 0;

    Stats& operator+=(const Stats& other);
    bool operator==(const Stats&) const = default;
};

/// Result of one check. `fail` carries a counterexample whenever the check has
/// a witness to report.
struct Verdict {
    std::string check;
    int bound = 0;
    std::optional<std::string> registers;
    std::optional<int> process;
    Outcome result = Outcome::Pass;
    std::optional<nlohmann::json> counterexample;
    Stats stats;
    /// Free-form metadata, e.g. how the type conjunction was rendered.
    nlohmann::json notes = nlohmann::json::object();
    std::optional<std::string> message;
    /// Populated by aggregate checks only.
    std::vector<Verdict> subchecks;

    bool passed() const noexcept { return result == Outcome::Pass; }

    /// Records the first counterexample and flips the result to fail.
    void fail_with(nlohmann::json witness);

    bool operator==(const Verdict&) const = default;
};

nlohmann::json to_json(const Verdict& verdict);
Verdict verdict_from_json(const nlohmann::json& doc);

/// Comparison that ignores `elapsed_ms` everywhere in the tree.
bool same_result(const Verdict& lhs, const Verdict& rhs);

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}

    std::int64_t elapsed_ms() const
    {
        return std::chrono::duration_cast<std::chrono::milliseconds>(
                   std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

} // namespace kishon
