#include <functional>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "commands.hpp"

namespace {

int report_error(const std::string& command, const std::string& error, const std::string& message, std::size_t line,
                 const std::string& file, int code) {
    cli::json j{{"error", error}, {"message", message}, {"command", command}};
    if (line) j["line"] = line;
    if (!file.empty()) j["file"] = file;
    std::cerr << j.dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Mean-reversion spread construction, Q-learning trading and benchmark backtests"};
    app.require_subcommand(1);
    app.set_version_flag("--version", rv_version());

    const std::map<std::string, std::pair<std::string, std::function<void(const cli::Context&)>>> commands{
        {"simulate-ou", {"Simulate seeded OU paths", cli::cmd_simulate_ou}},
        {"emrt", {"Important extremes and EMRT of one price series", cli::cmd_emrt}},
        {"table1", {"Average EMRT across a sweep of reversion speeds", cli::cmd_table1}},
        {"fit-spread", {"Grid search for the minimal-EMRT spread", cli::cmd_fit_spread}},
        {"train", {"Train the Q-learning agent on simulated OU spreads", cli::cmd_train}},
        {"evaluate", {"Greedy rollout of a trained agent", cli::cmd_evaluate}},
        {"benchmark", {"Distance and OU benchmark signals", cli::cmd_benchmark}},
        {"backtest", {"Wealth curves and metrics for trade lists", cli::cmd_backtest}},
        {"report", {"Strategy comparison table with cross-checks", cli::cmd_report}},
    };

    std::string config;
    std::map<std::string, CLI::App*> subs;
    for (const auto& [name, entry] : commands) {
        CLI::App* sub = app.add_subcommand(name, entry.first);
        sub->add_option("-c,--config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
        subs[name] = sub;
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);
        return report_error("", "Usage", e.what(), 0, {}, 2);
    }

    for (const auto& [name, sub] : subs) {
        if (!sub->parsed()) continue;
        try {
            const cli::Context ctx(config, name);
            commands.at(name).second(ctx);
            return 0;
        } catch (const cli::Failure& e) {
            return report_error(name, rv_status_name(e.status), e.what(), e.line, e.file, 1);
        } catch (const cli::ConfigError& e) {
            return report_error(name, "InvalidConfig", e.what(), 0, config, 2);
        } catch (const std::exception& e) {
            return report_error(name, "Internal", e.what(), 0, {}, 3);
        }
    }
    return 0;
}
