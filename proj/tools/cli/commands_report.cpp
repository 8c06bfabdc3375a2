#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "commands.hpp"

namespace cli {

namespace {

json metrics_json(const rv_metrics& m) {
    return {{"daily_ret_mean", m.daily_ret_mean}, {"daily_ret_std", m.daily_ret_std}, {"daily_sharpe", m.daily_sharpe},
            {"max_drawdown", m.max_drawdown},     {"cumul_pnl", m.cumul_pnl}};
}

std::vector<std::string> runs_of(Block& b) {
    auto runs = b.texts("runs");
    if (runs.empty()) runs = {"rl", "dm", "ou"};
    for (const auto& r : runs)
        if (r != "rl" && r != "dm" && r != "ou") throw ConfigError("runs entries must be 'rl', 'dm' or 'ou'");
    return runs;
}

std::vector<double> read_wealth(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Failure(RV_ERR_MISSING_FILE, "cannot open " + path.string(), 0, path.string());
    std::vector<double> out;
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            header = true;
            continue;
        }
        const auto comma = line.rfind(',');
        double v = 0.0;
        const char* first = line.data() + comma + 1;
        auto [ptr, ec] = std::from_chars(first, line.data() + line.size(), v);
        if (comma == std::string::npos || ec != std::errc{})
            throw Failure(RV_ERR_MALFORMED_ROW, "unparseable wealth row", line_no, path.string());
        out.push_back(v);
    }
    return out;
}

bool close_to(double a, double b, double tol) { return std::abs(a - b) <= tol * std::max(1.0, std::abs(b)); }

}  // namespace

void cmd_backtest(const Context& ctx) {
    Block b = ctx.block("backtest");
    rv_backtest_config cfg = rv_backtest_config_default();
    cfg.initial_wealth = b.real("initial_wealth", cfg.initial_wealth);
    cfg.sizing = b.choice("sizing", "gross-exposure", {"gross-exposure", "long-leg"}) == "gross-exposure"
                     ? RV_SIZING_GROSS_EXPOSURE
                     : RV_SIZING_LONG_LEG;
    cfg.transaction_cost = b.real("transaction_cost", cfg.transaction_cost);
    cfg.interest_rate = b.real("interest_rate", cfg.interest_rate);
    const auto runs = runs_of(b);
    b.finish();

    for (const auto& run : runs) {
        const Legs legs = legs_for(ctx, run);
        Panel panel = load_panel(ctx, legs.tickers);
        Windows w = split_windows(ctx, panel.get());
        Series spread = combine(w.trading.get(), legs.coefficients);
        Trades trades = read_trades(ctx.output("trades_" + run + ".csv"), run);

        rv_report* raw = nullptr;
        check(rv_run_backtest(spread.get(), w.trading.get(), legs.coefficients.data(), legs.coefficients.size(),
                              trades.get(), &cfg, &raw));
        Report rep(raw);
        const auto wealth = values(rv_report_wealth(rep.get()));
        std::vector<std::string> rows{"0,," + fmt(wealth[0])};
        for (std::size_t t = 1; t < wealth.size(); ++t)
            rows.push_back(std::to_string(t) + "," + iso(rv_panel_date(w.trading.get(), t - 1)) + "," + fmt(wealth[t]));
        ctx.write_csv("wealth_" + run + ".csv", "step,date,wealth", rows);

        rv_metrics m{};
        rv_report_metrics(rep.get(), &m);
        json out;
        out["run"] = run;
        out["tickers"] = legs.tickers;
        out["coefficients"] = legs.coefficients;
        out["sizing"] = cfg.sizing == RV_SIZING_GROSS_EXPOSURE ? "gross-exposure" : "long-leg";
        out["initial_wealth"] = cfg.initial_wealth;
        out["transaction_cost"] = cfg.transaction_cost;
        out["interest_rate"] = cfg.interest_rate;
        out["trades"] = rv_trades_count(trades.get());
        out["final_wealth"] = wealth.back();
        out["metrics"] = metrics_json(m);
        ctx.write_json("report_" + run + ".json", out);
    }
}

void cmd_report(const Context& ctx) {
    Block b = ctx.block("report");
    const auto runs = runs_of(b);
    Block labels = b.child("labels");
    std::vector<std::string> names;
    for (const auto& r : runs) names.push_back(labels.text(r, r == "rl" ? "EMRT-RL" : r == "dm" ? "DM" : "OU"));
    labels.finish();
    b.finish();

    std::vector<std::string> rows;
    json out;
    out["rows"] = json::array();
    bool all_ok = true;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        const fs::path report_path = ctx.output("report_" + runs[i] + ".json");
        const json rep = read_json(report_path);
        const auto wealth = read_wealth(ctx.output("wealth_" + runs[i] + ".csv"));

        rv_metrics stored{};
        try {
            const json& m = rep.at("metrics");
            stored = {m.at("daily_ret_mean").get<double>(), m.at("daily_ret_std").get<double>(),
                      m.at("daily_sharpe").get<double>(), m.at("max_drawdown").get<double>(),
                      m.at("cumul_pnl").get<double>()};
        } catch (const json::exception& e) {
            throw Failure(RV_ERR_MALFORMED_ROW, report_path.string() + ": " + e.what(), 0, report_path.string());
        }

        // Cross-checks against the wealth curve on disk.
        Series w = make_series(wealth);
        rv_metrics again{};
        check(rv_compute_metrics(w.get(), &again));
        double growth = 1.0;
        bool finite = true;
        for (std::size_t t = 1; t < wealth.size(); ++t) growth *= 1.0 + (wealth[t] - wealth[t - 1]) / wealth[t - 1];
        for (double v : {stored.daily_ret_mean, stored.daily_ret_std, stored.daily_sharpe, stored.max_drawdown,
                         stored.cumul_pnl})
            finite = finite && std::isfinite(v);
        json checks;
        checks["finite"] = finite;
        checks["metrics_match_wealth"] =
            close_to(stored.daily_ret_mean, again.daily_ret_mean, 1e-10) &&
            close_to(stored.daily_ret_std, again.daily_ret_std, 1e-10) &&
            close_to(stored.daily_sharpe, again.daily_sharpe, 1e-10) &&
            close_to(stored.max_drawdown, again.max_drawdown, 1e-10) && close_to(stored.cumul_pnl, again.cumul_pnl, 1e-10);
        checks["max_drawdown_non_positive"] = stored.max_drawdown <= 0.0;
        checks["cumul_pnl_matches_endpoints"] =
            close_to(stored.cumul_pnl, (wealth.back() / wealth.front() - 1.0) * 100.0, 1e-10);
        checks["compounding_matches_endpoints"] = close_to(growth, wealth.back() / wealth.front(), 1e-10);
        checks["opening_capital"] = wealth.front() == rep.value("initial_wealth", wealth.front());
        bool ok = true;
        for (const auto& [k, v] : checks.items()) ok = ok && v.get<bool>();
        all_ok = all_ok && ok;

        rows.push_back(names[i] + "," + fmt(stored.daily_ret_mean) + "," + fmt(stored.daily_ret_std) + "," +
                       fmt(stored.daily_sharpe) + "," + fmt(stored.max_drawdown) + "," + fmt(stored.cumul_pnl));
        out["rows"].push_back({{"strategy", names[i]},
                               {"run", runs[i]},
                               {"tickers", rep.value("tickers", json::array())},
                               {"metrics", metrics_json(stored)},
                               {"checks", checks},
                               {"consistent", ok}});
    }
    out["consistent"] = all_ok;
    ctx.write_csv("report.csv", "strategy,DailyRet,DailyStd,DailySR,MaxDD,CumulPnL", rows);
    ctx.write_json("report.json", out);
    if (!all_ok) throw Failure(RV_ERR_DEGENERATE_WEALTH, "report cross-checks failed; see report.json");
}

}  // namespace cli
