#include <cmath>

#include "commands.hpp"

namespace cli {

namespace {

json window_info(const rv_panel* p) {
    const std::size_t rows = rv_panel_rows(p);
    return {{"start", iso(rv_panel_date(p, 0))}, {"end", iso(rv_panel_date(p, rows - 1))}, {"rows", rows}};
}

std::string close_name(rv_close_rule r) { return r == RV_CLOSE_BAND ? "band" : "mean"; }

rv_close_rule close_rule(Block& b) {
    return b.choice("close", "band", {"band", "mean"}) == "band" ? RV_CLOSE_BAND : RV_CLOSE_MEAN;
}

double mean_of(const std::vector<double>& v) {
    double m = 0.0;
    for (double x : v) m += x;
    return m / static_cast<double>(v.size());
}

double std_of(const std::vector<double>& v) {
    const double m = mean_of(v);
    double ss = 0.0;
    for (double x : v) ss += (x - m) * (x - m);
    return std::sqrt(ss / static_cast<double>(v.size() - 1));
}

// Lowest-SSD pair over every CSV in the input directory, ranked on the
// formation window.
std::vector<std::string> select_pair(const Context& ctx, json& info) {
    const auto all = available_tickers(ctx.input_dir());
    if (all.size() < 2) throw Failure(RV_ERR_INVALID_ARGUMENT, "pair selection needs at least two tickers");
    Panel panel = load_panel(ctx, all);
    Windows w = split_windows(ctx, panel.get());
    std::size_t count = 0;
    check(rv_ssd_rank(w.formation.get(), nullptr, 0, &count));
    std::vector<rv_pair_score> scores(count);
    check(rv_ssd_rank(w.formation.get(), scores.data(), scores.size(), &count));
    info["ranking"] = json::array();
    for (const auto& s : scores)
        info["ranking"].push_back({{"pair", {all[s.first], all[s.second]}}, {"ssd", s.ssd}});
    return {all[scores[0].first], all[scores[0].second]};
}

}  // namespace

Legs legs_for(const Context& ctx, const std::string& run) {
    const fs::path file = ctx.output(run == "rl" ? "fit_spread.json" : "benchmark_" + run + ".json");
    const json j = read_json(file);
    Legs legs;
    try {
        legs.tickers = j.at("tickers").get<std::vector<std::string>>();
        legs.coefficients = j.at("coefficients").get<std::vector<double>>();
    } catch (const json::exception& e) {
        throw Failure(RV_ERR_MALFORMED_ROW, file.string() + ": " + e.what(), 0, file.string());
    }
    return legs;
}

void cmd_fit_spread(const Context& ctx) {
    Block b = ctx.block("fit_spread");
    rv_search_config cfg = rv_search_config_default();
    cfg.grid_min = b.real("grid_min", cfg.grid_min);
    cfg.grid_max = b.real("grid_max", cfg.grid_max);
    cfg.grid_step = b.real("grid_step", cfg.grid_step);
    cfg.c_threshold = b.real("c", cfg.c_threshold);
    if (auto cap = b.optional_real("variance_cap")) {
        cfg.has_variance_cap = 1;
        cfg.variance_cap = *cap;
    }
    cfg.min_spread_std = b.real("min_spread_std", cfg.min_spread_std);
    cfg.max_evaluations = b.count("max_evaluations", cfg.max_evaluations);
    cfg.refine_when_over_budget = b.flag("refine_when_over_budget", false);
    b.finish();

    const auto tickers = ctx.tickers();
    Panel panel = load_panel(ctx, tickers);
    Windows w = split_windows(ctx, panel.get());

    rv_search_result* raw = nullptr;
    check(rv_search_coefficients(w.formation.get(), &cfg, &raw));
    SearchResult result(raw);
    std::vector<double> coeffs(rv_search_result_coefficients(result.get(), nullptr, 0));
    rv_search_result_coefficients(result.get(), coeffs.data(), coeffs.size());

    Series full = combine(panel.get(), coeffs);
    const auto v = values(full.get());
    const std::size_t formation_rows = rv_panel_rows(w.formation.get());
    const bool split = formation_rows != rv_panel_rows(panel.get());
    std::vector<std::string> rows;
    for (std::size_t t = 0; t < v.size(); ++t)
        rows.push_back(std::to_string(t) + "," + iso(rv_panel_date(panel.get(), t)) + "," +
                       (split && t >= formation_rows ? "trading" : "formation") + "," + fmt(v[t]));
    ctx.write_csv("spread.csv", "index,date,window,value", rows);

    json out;
    out["tickers"] = tickers;
    out["coefficients"] = coeffs;
    out["emrt"] = rv_search_result_emrt(result.get());
    out["evaluated"] = rv_search_result_evaluated(result.get());
    out["skipped"] = rv_search_result_skipped(result.get());
    out["exhaustive"] = rv_search_result_exhaustive(result.get()) != 0;
    out["grid"] = {{"min", cfg.grid_min}, {"max", cfg.grid_max}, {"step", cfg.grid_step}};
    out["c"] = cfg.c_threshold;
    out["formation"] = window_info(w.formation.get());
    out["trading"] = window_info(w.trading.get());
    ctx.write_json("fit_spread.json", out);
}

void cmd_benchmark(const Context& ctx) {
    Block b = ctx.block("benchmark");
    auto methods = b.texts("methods");
    if (methods.empty()) methods = {"dm", "ou"};
    auto pair = b.texts("pair");
    Block dm = b.child("dm");
    const double dm_k = dm.real("k", 1.0);
    const rv_close_rule dm_close = close_rule(dm);
    dm.finish();
    Block ou = b.child("ou");
    const double ou_k = ou.real("k", 0.5);
    const rv_close_rule ou_close = close_rule(ou);
    const double b_lo = ou.real("b_min", 0.01), b_hi = ou.real("b_max", 3.0), b_step = ou.real("b_step", 0.01);
    ou.finish();
    b.finish();
    for (const auto& m : methods)
        if (m != "dm" && m != "ou") throw ConfigError("benchmark.methods entries must be 'dm' or 'ou'");

    json selection;
    if (pair.empty()) {
        pair = select_pair(ctx, selection);
        selection["rule"] = "min-ssd";
    } else if (pair.size() != 2) {
        throw ConfigError("benchmark.pair must name exactly two tickers");
    } else {
        selection["rule"] = "configured";
    }

    Panel panel = load_panel(ctx, pair);
    Windows w = split_windows(ctx, panel.get());
    Series f1 = column(w.formation.get(), 0), f2 = column(w.formation.get(), 1);

    for (const auto& m : methods) {
        json out;
        out["method"] = m;
        out["tickers"] = pair;
        out["selection"] = selection;
        out["formation"] = window_info(w.formation.get());
        out["trading"] = window_info(w.trading.get());
        std::vector<double> coeffs;
        rv_trades* raw = nullptr;
        if (m == "dm") {
            coeffs = {1.0, -1.0};
            const auto form = values(combine(w.formation.get(), coeffs).get());
            const double mean = mean_of(form), sd = form.size() > 1 ? std_of(form) : 0.0;
            Series trade = combine(w.trading.get(), coeffs);
            check(rv_dm_signals(trade.get(), mean, sd, dm_k, dm_close, &raw));
            out["mean"] = mean;
            out["std"] = sd;
            out["k"] = dm_k;
            out["close"] = close_name(dm_close);
        } else {
            double bval = 0.0, score = 0.0;
            rv_ou_params params{};
            check(rv_ou_fit_pair(f1.get(), f2.get(), b_lo, b_hi, b_step, &bval, &params, &score));
            coeffs = {1.0, -bval};
            Series trade = combine(w.trading.get(), coeffs);
            check(rv_ou_signals(trade.get(), &params, ou_k, ou_close, &raw));
            double eq = 0.0;
            check(rv_sigma_eq(&params, &eq));
            out["b"] = bval;
            out["params"] = {{"mu", params.mu}, {"theta", params.theta}, {"sigma", params.sigma}, {"sigma_eq", eq}};
            out["avg_log_likelihood"] = score;
            out["k"] = ou_k;
            out["close"] = close_name(ou_close);
        }
        Trades trades(raw);
        out["coefficients"] = coeffs;
        out["trades"] = rv_trades_count(trades.get());
        write_trades(ctx, "trades_" + m + ".csv", trades.get(), w.trading.get());
        ctx.write_json("benchmark_" + m + ".json", out);
    }
}

}  // namespace cli
