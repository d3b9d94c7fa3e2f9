#pragma once

// Dispatch from a run configuration to the individual checks.

#include "kishon/executions.hpp"
#include "kishon/verdict.hpp"

#include <json.hpp>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace kishon {

/// Invalid configuration: unknown check, bad bound, malformed file.
class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline constexpr int kMaxBound = 9;

struct RunConfig {
    int bound = 3;
    executions::RegisterSemantics registers = executions::RegisterSemantics::Regular;
    std::string check = "all";
    std::optional<int> process;
    std::optional<std::string> output_path;
    bool quiet = false;
};

const std::vector<std::string>& check_names();

/// Fields present in `doc` override those of `base`.
RunConfig config_from_json(const nlohmann::json& doc, RunConfig base = {});
/// Throws ConfigError when the config is out of range.
void validate(const RunConfig& config);

/// Runs the configured check. Throws ConfigError on invalid configuration.
Verdict run(const RunConfig& config);

/// Every order extending two disjoint 4-chains is Russell-Wiener and
/// round-trips through an interval realization.
Verdict check_orders();

/// The aggregate check: each sub-check carries its expected outcome in
/// notes.expected, and the aggregate passes iff every sub-check matches.
Verdict check_all(int bound);

/// {"orders": [...], "count": n} for the two-chain orders of length `k`.
nlohmann::json enumerate_orders_document(std::size_t k);

/// 0 on pass, 1 on fail or error.
int exit_code(const Verdict& v) noexcept;

} // namespace kishon
