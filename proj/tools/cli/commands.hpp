#pragma once

#include "context.hpp"

namespace cli {

void cmd_simulate_ou(const Context& ctx);
void cmd_emrt(const Context& ctx);
void cmd_table1(const Context& ctx);
void cmd_fit_spread(const Context& ctx);
void cmd_benchmark(const Context& ctx);
void cmd_train(const Context& ctx);
void cmd_evaluate(const Context& ctx);
void cmd_backtest(const Context& ctx);
void cmd_report(const Context& ctx);

// Spread legs recorded by fit-spread ("rl") or benchmark ("dm", "ou").
struct Legs {
    std::vector<std::string> tickers;
    std::vector<double> coefficients;
};
Legs legs_for(const Context& ctx, const std::string& run);

}  // namespace cli
