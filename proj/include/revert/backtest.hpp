#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "revert/marketdata.hpp"
#include "revert/trades.hpp"

namespace revert {

enum class Sizing {
    GrossExposure,  // entry basis sum_i |a_i| * S_i(t)
    LongLeg,        // entry basis S_1(t)
};

struct BacktestConfig {
    double initial_wealth = 100.0;
    Sizing sizing = Sizing::GrossExposure;
    double transaction_cost = 0.0;  // currency per unit, charged on entry and exit
    double interest_rate = 0.0;     // per step, earned on cash while flat

    void validate() const;
};

struct Metrics {
    double daily_ret_mean = 0.0;  // %
    double daily_ret_std = 0.0;   // %, sample (n-1)
    double daily_sharpe = 0.0;    // mean / std of daily returns, unannualized
    double max_drawdown = 0.0;    // %, <= 0
    double cumul_pnl = 0.0;       // %
};

struct BacktestReport {
    /// wealth[0] is the opening capital; wealth[t + 1] is the mark at the
    /// close of trading day t. Length = spread length + 1.
    Series wealth;
    Metrics metrics;
    Sizing sizing = Sizing::GrossExposure;
    std::string source;
};

/// Legs for the entry basis. Without legs the spread itself is the traded
/// instrument and its price is the basis.
struct Legs {
    const PricePanel* panel = nullptr;
    std::span<const double> coefficients;
};

/// All-in long trading of the spread: at each buy, units = cash / basis; while
/// long wealth = cash + units * (X_t - X_entry); sells realize the P&L.
BacktestReport run_backtest(const Series& spread, const Legs& legs, const TradeList& trades,
                            const BacktestConfig& config);

Metrics compute_metrics(const Series& wealth);

}  // namespace revert
