#include "revert/backtest.hpp"

#include <algorithm>
#include <cmath>

#include "revert/error.hpp"
#include "revert/stats.hpp"

namespace revert {

void BacktestConfig::validate() const {
    if (!(initial_wealth > 0.0)) throw Error(Errc::InvalidArgument, "initial wealth must be positive");
    if (!(transaction_cost >= 0.0)) throw Error(Errc::InvalidArgument, "transaction cost must be non-negative");
    if (!(interest_rate > -1.0)) throw Error(Errc::InvalidArgument, "interest rate must exceed -1");
}

BacktestReport run_backtest(const Series& spread, const Legs& legs, const TradeList& trades,
                            const BacktestConfig& config) {
    config.validate();
    const std::size_t n = spread.size();
    if (n == 0) throw Error(Errc::EmptySeries, "backtest needs a non-empty spread");
    if (legs.panel) {
        if (legs.panel->rows() != n) throw Error(Errc::DimensionMismatch, "legs and spread differ in length");
        if (legs.coefficients.size() != legs.panel->assets())
            throw Error(Errc::DimensionMismatch, "coefficient count does not match legs");
    }
    if (count_violations(trades) != 0)
        throw Error(Errc::InvalidArgument, "trade list must alternate buy/sell starting with a buy");
    for (const auto& e : trades.events)
        if (e.time >= n) throw Error(Errc::OutOfBoundsTrade, "trade at index " + std::to_string(e.time) + " is out of range");

    auto basis_at = [&](std::size_t t) {
        if (!legs.panel) return spread[t];
        if (config.sizing == Sizing::LongLeg) return legs.panel->price(t, 0);
        double b = 0.0;
        for (std::size_t i = 0; i < legs.panel->assets(); ++i)
            b += std::abs(legs.coefficients[i]) * legs.panel->price(t, i);
        return b;
    };

    BacktestReport report;
    report.sizing = config.sizing;
    report.source = trades.source;
    report.wealth.origin = "wealth";
    report.wealth.values.reserve(n + 1);
    report.wealth.values.push_back(config.initial_wealth);

    double cash = config.initial_wealth;
    double units = 0.0;
    double entry = 0.0;
    std::size_t next = 0;
    for (std::size_t t = 0; t < n; ++t) {
        if (units == 0.0 && t > 0) cash *= 1.0 + config.interest_rate;
        if (next < trades.events.size() && trades.events[next].time == t) {
            const auto& ev = trades.events[next++];
            if (ev.action == 1) {
                const double basis = basis_at(t);
                if (!(basis > 0.0)) throw Error(Errc::NonPositiveBasis, "entry basis at index " + std::to_string(t) + " is not positive");
                units = cash / basis;
                entry = spread[t];
                cash -= units * config.transaction_cost;
            } else {
                cash += units * (spread[t] - entry) - units * config.transaction_cost;
                units = 0.0;
            }
        }
        report.wealth.values.push_back(cash + units * (spread[t] - entry));
    }
    report.metrics = compute_metrics(report.wealth);
    return report;
}

Metrics compute_metrics(const Series& wealth) {
    if (wealth.size() < 2) throw Error(Errc::DegenerateWealth, "wealth curve needs at least two points");
    for (double w : wealth.values)
        if (!(w > 0.0) || !std::isfinite(w)) throw Error(Errc::DegenerateWealth, "wealth must stay strictly positive");

    std::vector<double> ret;
    ret.reserve(wealth.size() - 1);
    for (std::size_t t = 1; t < wealth.size(); ++t) ret.push_back((wealth[t] - wealth[t - 1]) / wealth[t - 1]);

    Metrics m;
    const double mean = stats::mean(ret);
    const double sd = stats::sample_std(ret);
    m.daily_ret_mean = mean * 100.0;
    m.daily_ret_std = sd * 100.0;
    m.daily_sharpe = sd > 0.0 ? mean / sd : 0.0;

    double peak = wealth[0];
    for (double w : wealth.values) {
        peak = std::max(peak, w);
        m.max_drawdown = std::min(m.max_drawdown, (w - peak) / peak * 100.0);
    }
    m.cumul_pnl = (wealth.values.back() - wealth.values.front()) / wealth.values.front() * 100.0;
    return m;
}

}  // namespace revert
