// Command-line entry point for the verification checks.

#include "kishon/run.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <map>

namespace {

using nlohmann::json;

int emit(const json& doc, const kishon::RunConfig& config)
{
    const std::string text = doc.dump(2) + "\n";
    if (config.output_path) {
        std::ofstream out(*config.output_path);
        if (!out) {
            std::cerr << "error: cannot write " << *config.output_path << "\n";
            return 2;
        }
        out << text;
    }
    if (!config.quiet) std::cout << text;
    return 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exhaustive checks for the two-process Poker protocol"};
    app.require_subcommand(0, 1);

    int bound = 0;
    int process = 0;
    std::string registers, check, config_path, out_path;
    bool quiet = false;
    std::size_t chain_length = 4;

    auto* bound_opt = app.add_option("--bound,-n", bound, "Largest pickable number");
    auto* registers_opt = app.add_option("--registers", registers, "serial | regular | safe");
    auto* check_opt = app.add_option("--check", check, "Check to run");
    auto* process_opt = app.add_option("--process", process, "Process index for nonrestricted (0 or 1)");
    app.add_option("--config", config_path, "JSON config file; flags override its values");
    auto* out_opt = app.add_option("--out", out_path, "Also write the JSON result to this file");
    app.add_flag("--quiet,-q", quiet, "Do not print the result on stdout");

    const std::map<std::string, std::string> subcommands = {
        {"check-invariant", "invariant"},     {"check-theorem1", "theorem1"},
        {"check-theorem2", "theorem2"},       {"check-theorem33", "theorem33"},
        {"check-lemmas", "lemmas"},           {"check-nonrestricted", "nonrestricted"},
        {"bridge-check", "bridge"},           {"check-all", "all"},
    };
    for (const auto& [name, target] : subcommands) app.add_subcommand(name, "Run the " + target + " check")->fallthrough();
    auto* enumerate = app.add_subcommand("enumerate-orders", "List the orders extending two 4-chains");
    enumerate->fallthrough();
    enumerate->add_option("--chain-length", chain_length, "Length of each chain")->check(CLI::Range(1, 8));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    kishon::RunConfig config;
    try {
        if (!config_path.empty()) {
            std::ifstream in(config_path);
            if (!in) throw kishon::ConfigError("cannot read config file " + config_path);
            json doc;
            try {
                doc = json::parse(in);
            } catch (const json::parse_error& e) {
                throw kishon::ConfigError(std::string("config is not valid JSON: ") + e.what());
            }
            config = kishon::config_from_json(doc, config);
        }
        if (*bound_opt) config.bound = bound;
        if (*registers_opt) config.registers = kishon::executions::parse_register_semantics(registers);
        if (*check_opt) config.check = check;
        if (*process_opt) config.process = process;
        if (*out_opt) config.output_path = out_path;
        if (quiet) config.quiet = true;

        if (enumerate->parsed()) return emit(kishon::enumerate_orders_document(chain_length), config);

        for (const auto& [name, target] : subcommands)
            if (app.got_subcommand(name)) config.check = target;
        kishon::validate(config);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }

    kishon::Verdict verdict;
    try {
        verdict = kishon::run(config);
    } catch (const std::exception& e) {
        verdict.check = config.check;
        verdict.bound = config.bound;
        verdict.result = kishon::Outcome::Error;
        verdict.message = e.what();
    }
    if (const int rc = emit(kishon::to_json(verdict), config); rc != 0) return rc;
    return kishon::exit_code(verdict);
}
