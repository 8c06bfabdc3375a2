#include <cmath>
#include <cstdio>

#include "commands.hpp"

namespace cli {

namespace {

rv_emrt_config emrt_config(Block& b) {
    rv_emrt_config c = rv_emrt_config_default();
    c.c_threshold = b.real("c", c.c_threshold);
    if (auto ref = b.optional_real("reference_mean")) {
        c.use_reference_mean = 1;
        c.reference_mean = *ref;
    }
    c.extremes = b.choice("extremes", "both", {"both", "maxima"}) == "both" ? RV_EXTREMES_BOTH : RV_EXTREMES_MAXIMA;
    return c;
}

}  // namespace

void cmd_simulate_ou(const Context& ctx) {
    Block b = ctx.block("simulate");
    rv_sim_config sim{};
    sim.params = {b.real("mu", 1.0), b.real("theta", 0.0), b.real("sigma", 1.0)};
    sim.x0 = b.real("x0", sim.params.theta);
    sim.horizon = b.real("horizon", 1.0);
    sim.n_steps = b.count("n_steps", 1000);
    const std::size_t paths = b.count("paths", 100);
    b.finish();

    json manifest;
    manifest["params"] = {{"mu", sim.params.mu}, {"theta", sim.params.theta}, {"sigma", sim.params.sigma},
                          {"x0", sim.x0},        {"horizon", sim.horizon},     {"n_steps", sim.n_steps}};
    manifest["paths"] = json::array();
    const double dt = sim.n_steps > 1 ? sim.horizon / static_cast<double>(sim.n_steps - 1) : 0.0;
    for (std::size_t i = 0; i < paths; ++i) {
        sim.seed = ctx.derive("sim/path/" + std::to_string(i));
        rv_series* raw = nullptr;
        check(rv_simulate_ou(&sim, &raw));
        Series s(raw);
        std::vector<std::string> rows;
        const auto v = values(s.get());
        for (std::size_t t = 0; t < v.size(); ++t)
            rows.push_back(std::to_string(t) + "," + fmt(static_cast<double>(t) * dt) + "," + fmt(v[t]));
        char name[32];
        std::snprintf(name, sizeof name, "path_%04zu.csv", i);
        ctx.write_csv(name, "index,t,value", rows);
        manifest["paths"].push_back({{"file", name}, {"seed", sim.seed}});
    }
    ctx.write_json("manifest.json", manifest);
}

void cmd_emrt(const Context& ctx) {
    Block b = ctx.block("emrt");
    const std::string input = b.text("input", "");
    rv_emrt_config cfg = emrt_config(b);
    b.finish();
    if (input.empty()) throw ConfigError("emrt.input must name a date,close CSV");

    const fs::path path = ctx.resolve(input);
    rv_series* raw = nullptr;
    check(rv_load_price_csv(path.string().c_str(), path.stem().string().c_str(), &raw), path.string());
    Series s(raw);
    const int32_t* dates = rv_series_dates(s.get());

    std::size_t n_ex = 0;
    check(rv_find_important_extremes(s.get(), cfg.c_threshold, nullptr, 0, &n_ex));
    std::vector<rv_extreme> ex(n_ex);
    check(rv_find_important_extremes(s.get(), cfg.c_threshold, ex.data(), ex.size(), &n_ex));
    std::size_t n_tau = 0;
    double ref = 0.0;
    check(rv_build_tau_sequence(s.get(), &cfg, nullptr, 0, &n_tau, &ref));
    std::vector<rv_tau> taus(n_tau);
    check(rv_build_tau_sequence(s.get(), &cfg, taus.data(), taus.size(), &n_tau, &ref));
    double emrt = 0.0;
    check(rv_compute_emrt(s.get(), &cfg, &emrt));

    json out;
    out["input"] = input;
    out["c"] = cfg.c_threshold;
    out["extremes_mode"] = cfg.extremes == RV_EXTREMES_BOTH ? "both" : "maxima";
    out["reference_mean"] = ref;
    out["emrt"] = emrt;
    out["pairs"] = n_tau / 2;
    out["extremes"] = json::array();
    for (const auto& e : ex)
        out["extremes"].push_back({{"index", e.index}, {"date", iso(dates[e.index])},
                                   {"kind", e.kind < 0 ? "min" : "max"}, {"value", e.value}});
    out["taus"] = json::array();
    for (const auto& t : taus)
        out["taus"].push_back({{"index", t.index}, {"kind", t.is_crossing ? "crossing" : "extreme"}});
    ctx.write_json("emrt.json", out);
}

void cmd_table1(const Context& ctx) {
    Block b = ctx.block("table1");
    const auto mus = b.reals("mus", {2, 4, 6, 8, 10, 12, 14, 16, 18, 20});
    const std::size_t paths = b.count("paths", 100);
    rv_sim_config sim{};
    sim.params.theta = b.real("theta", 0.0);
    sim.params.sigma = b.real("sigma", 1.0);
    sim.x0 = b.real("x0", 0.0);
    sim.horizon = b.real("horizon", 1.0);
    sim.n_steps = b.count("n_steps", 1000);
    rv_emrt_config cfg = emrt_config(b);
    b.finish();
    if (mus.empty() || paths == 0) throw ConfigError("table1 needs at least one mu and one path");

    std::vector<std::string> rows;
    json out;
    out["c"] = cfg.c_threshold;
    out["paths"] = paths;
    out["rows"] = json::array();
    for (double mu : mus) {
        sim.params.mu = mu;
        std::vector<double> e;
        std::size_t excluded = 0;
        for (std::size_t i = 0; i < paths; ++i) {
            sim.seed = ctx.derive("table1/mu/" + fmt(mu) + "/path/" + std::to_string(i));
            rv_series* raw = nullptr;
            check(rv_simulate_ou(&sim, &raw));
            Series s(raw);
            double v = 0.0;
            const rv_status st = rv_compute_emrt(s.get(), &cfg, &v);
            if (st == RV_ERR_NO_COMPLETE_PAIRS || st == RV_ERR_NO_EXTREMES) {
                ++excluded;
                continue;
            }
            check(st);
            e.push_back(v);
        }
        if (e.empty()) throw Failure(RV_ERR_NO_COMPLETE_PAIRS, "no path at mu=" + fmt(mu) + " has a complete pair");
        double mean = 0.0;
        for (double v : e) mean += v;
        mean /= static_cast<double>(e.size());
        double ss = 0.0;
        for (double v : e) ss += (v - mean) * (v - mean);
        const double sd = e.size() > 1 ? std::sqrt(ss / static_cast<double>(e.size() - 1)) : 0.0;
        rows.push_back(fmt(mu) + "," + fmt(mean) + "," + fmt(sd) + "," + std::to_string(e.size()));
        out["rows"].push_back({{"mu", mu}, {"mean_emrt", mean}, {"std_emrt", sd}, {"paths_used", e.size()},
                               {"paths_excluded", excluded}});
    }
    ctx.write_csv("table1.csv", "mu,mean_emrt,std_emrt,paths_used", rows);
    ctx.write_json("table1.json", out);
}

}  // namespace cli
