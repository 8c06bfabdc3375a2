#include <cmath>

#include "commands.hpp"

namespace cli {

namespace {

// A parameter given either as a number or as [lo, hi].
rv_range param_range(Block& b, const std::string& key, rv_range fallback) {
    if (!b.has(key)) {
        (void)b.optional_real(key);
        return fallback;
    }
    try {
        const double v = b.real(key, 0.0);
        return {v, v};
    } catch (const ConfigError&) {
    }
    const auto v = b.reals(key, {});
    if (v.size() != 2) throw ConfigError("env." + key + " must be a number or [lo, hi]");
    return {v[0], v[1]};
}

rv_env_config env_config(Block b, const rv_env_config& base) {
    rv_env_config env = base;
    env.mu = param_range(b, "mu", env.mu);
    env.theta = param_range(b, "theta", env.theta);
    env.sigma = param_range(b, "sigma", env.sigma);
    env.horizon = b.real("horizon", env.horizon);
    env.n_steps = b.count("n_steps", env.n_steps);
    env.paths = b.count("paths", env.paths);
    if (auto x0 = b.optional_real("x0")) {
        env.has_x0 = 1;
        env.x0 = *x0;
    }
    b.finish();
    return env;
}

rv_rl_config rl_config(Block b) {
    rv_rl_config c = rv_rl_config_default();
    c.lookback = b.count("lookback", c.lookback);
    c.move_threshold = b.real("move_threshold", c.move_threshold);
    c.learning_rate = b.real("learning_rate", c.learning_rate);
    c.discount = b.real("discount", c.discount);
    c.epsilon = b.real("epsilon", c.epsilon);
    c.episodes = b.count("episodes", c.episodes);
    c.transaction_cost = b.real("transaction_cost", c.transaction_cost);
    c.interest_rate = b.real("interest_rate", c.interest_rate);
    c.encoding = b.choice("encoding", "pct", {"pct", "norm-diff"}) == "pct" ? RV_ENCODING_PCT : RV_ENCODING_NORM_DIFF;
    c.encoding_scale = b.real("encoding_scale", c.encoding_scale);
    b.finish();
    return c;
}

json env_json(const rv_env_config& e) {
    json j{{"mu", {e.mu.lo, e.mu.hi}},   {"theta", {e.theta.lo, e.theta.hi}}, {"sigma", {e.sigma.lo, e.sigma.hi}},
           {"horizon", e.horizon},       {"n_steps", e.n_steps},              {"paths", e.paths},
           {"seed", e.seed}};
    if (e.has_x0) j["x0"] = e.x0;
    return j;
}

struct Agent {
    QTable table;
    rv_rl_config config;
};

Agent load_agent(const Context& ctx, Block& b) {
    const std::string dir = b.text("agent_dir", "");
    const fs::path base = dir.empty() ? ctx.output("") : ctx.resolve(dir);
    const fs::path csv = base / "agent_q.csv", side = base / "agent.json";
    rv_qtable* raw = nullptr;
    Agent a{nullptr, {}};
    check(rv_qtable_load(csv.string().c_str(), side.string().c_str(), &raw, &a.config), csv.string());
    a.table.reset(raw);
    return a;
}

}  // namespace

void cmd_train(const Context& ctx) {
    Block b = ctx.block("train");
    rv_rl_config cfg = rl_config(b.child("rl"));
    rv_env_config env = env_config(b.child("env"), rv_env_config_default());
    b.finish();
    cfg.seed = ctx.derive("train/rl");
    env.seed = ctx.derive("train/env");

    rv_qtable* raw = nullptr;
    check(rv_train(&env, &cfg, &raw));
    QTable table(raw);

    const fs::path csv = ctx.output("agent_q.csv"), side = ctx.output("agent.json");
    check(rv_qtable_save(table.get(), &cfg, csv.string().c_str(), side.string().c_str(),
                         ctx.provenance_comment().substr(2).c_str()));
    json sidecar = read_json(side);
    ctx.write_json("agent.json", sidecar);

    std::size_t visited = 0;
    std::uint64_t updates = 0;
    for (std::size_t s = 0; s < rv_qtable_states(table.get()); ++s) {
        std::uint64_t here = 0;
        for (int a : {-1, 0, 1}) {
            std::uint64_t v = 0;
            check(rv_qtable_visits(table.get(), s, a, &v));
            here += v;
        }
        visited += here > 0;
        updates += here;
    }
    json out;
    out["env"] = env_json(env);
    out["states"] = rv_qtable_states(table.get());
    out["states_visited"] = visited;
    out["updates"] = updates;
    ctx.write_json("train.json", out);
}

void cmd_evaluate(const Context& ctx) {
    Block b = ctx.block("evaluate");
    const std::string source = b.choice("source", "spread", {"spread", "simulated"});
    Agent agent = load_agent(ctx, b);
    const std::size_t paths = b.count("paths", 100);
    Block env_block = b.child("env");

    if (source == "spread") {
        env_block.finish();
        b.finish();
        const Legs legs = legs_for(ctx, "rl");
        Panel panel = load_panel(ctx, legs.tickers);
        Windows w = split_windows(ctx, panel.get());
        Series spread = combine(w.trading.get(), legs.coefficients);
        rv_trades* raw = nullptr;
        check(rv_evaluate(agent.table.get(), spread.get(), &agent.config, &raw));
        Trades trades(raw);
        write_trades(ctx, "trades_rl.csv", trades.get(), w.trading.get());
        json out;
        out["source"] = source;
        out["tickers"] = legs.tickers;
        out["coefficients"] = legs.coefficients;
        out["trades"] = rv_trades_count(trades.get());
        out["violations"] = rv_trades_violations(trades.get());
        ctx.write_json("evaluate.json", out);
        return;
    }

    // Fresh simulated paths, on a stream disjoint from training.
    rv_env_config env = env_config(std::move(env_block), rv_env_config_default());
    b.finish();
    env.paths = paths;
    env.seed = ctx.derive("evaluate/env");
    rv_backtest_config bt = rv_backtest_config_default();
    bt.transaction_cost = agent.config.transaction_cost;

    std::vector<std::string> rows;
    double total = 0.0;
    std::size_t violations = 0;
    for (std::size_t i = 0; i < paths; ++i) {
        rv_series* raw = nullptr;
        double theta = 0.0;
        check(rv_env_path(&env, i, &raw, &theta));
        Series path(raw);
        rv_trades* traw = nullptr;
        check(rv_evaluate(agent.table.get(), path.get(), &agent.config, &traw));
        Trades trades(traw);
        violations += rv_trades_violations(trades.get());
        rv_report* rraw = nullptr;
        check(rv_run_backtest(path.get(), nullptr, nullptr, 0, trades.get(), &bt, &rraw));
        Report rep(rraw);
        rv_metrics m{};
        rv_report_metrics(rep.get(), &m);
        total += m.cumul_pnl;
        rows.push_back(std::to_string(i) + "," + fmt(theta) + "," + std::to_string(rv_trades_count(trades.get())) + "," +
                       fmt(m.cumul_pnl) + "," + fmt(m.max_drawdown));
    }
    ctx.write_csv("evaluate_sim.csv", "path,theta,trades,cumul_pnl,max_drawdown", rows);
    json out;
    out["source"] = source;
    out["env"] = env_json(env);
    out["mean_cumul_pnl"] = paths ? total / static_cast<double>(paths) : 0.0;
    out["violations"] = violations;
    ctx.write_json("evaluate.json", out);
}

}  // namespace cli
