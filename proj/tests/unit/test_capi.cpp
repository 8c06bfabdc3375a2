#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "revert/revert.h"

namespace {

rv_series* make_series(const std::vector<double>& v) {
    rv_series* s = nullptr;
    REQUIRE(rv_series_create(v.data(), v.size(), &s) == RV_OK);
    return s;
}

}  // namespace

TEST_CASE("status names and version") {
    CHECK(std::string(rv_status_name(RV_OK)) == "Ok");
    CHECK(std::string(rv_status_name(RV_ERR_NON_POSITIVE_PRICE)) == "NonPositivePrice");
    CHECK(std::string(rv_status_name(RV_ERR_BUFFER_TOO_SMALL)) == "BufferTooSmall");
    CHECK(std::strlen(rv_version()) > 0);
    CHECK(rv_derive_seed(1, "a") == rv_derive_seed(1, "a"));
    CHECK(rv_derive_seed(1, "a") != rv_derive_seed(1, "b"));
}

TEST_CASE("csv errors carry the line") {
    oracle::TempDir dir;
    const auto p = dir.write("a.csv", "date,close\n2020-01-02,100.0\n2020-01-03,-5.0\n");
    rv_series* s = nullptr;
    CHECK(rv_load_price_csv(p.string().c_str(), "A", &s) == RV_ERR_NON_POSITIVE_PRICE);
    CHECK(s == nullptr);
    CHECK(rv_last_error_line() == 3);
    CHECK(std::string(rv_last_error_message()).find("positive") != std::string::npos);

    const auto ok = dir.write("b.csv", "date,close\n2020-01-02,100.0\n2020-01-03,101.0\n");
    REQUIRE(rv_load_price_csv(ok.string().c_str(), "B", &s) == RV_OK);
    CHECK(rv_series_length(s) == 2);
    CHECK(rv_series_values(s)[1] == 101.0);
    char buf[11];
    REQUIRE(rv_format_date(rv_series_dates(s)[0], buf, sizeof buf) == RV_OK);
    CHECK(std::string(buf) == "2020-01-02");
    CHECK(rv_last_error_line() == 0);
    rv_series_destroy(s);
}

TEST_CASE("null arguments are rejected") {
    CHECK(rv_series_create(nullptr, 3, nullptr) == RV_ERR_INVALID_ARGUMENT);
    double x;
    CHECK(rv_compute_emrt(nullptr, nullptr, &x) == RV_ERR_INVALID_ARGUMENT);
    rv_series_destroy(nullptr);
    rv_panel_destroy(nullptr);
}

TEST_CASE("extremes through the two-call pattern") {
    rv_series* s = make_series({0, 3, 0, -3, 0, 3, 0});
    size_t count = 0;
    REQUIRE(rv_find_important_extremes(s, 1.0, nullptr, 0, &count) == RV_OK);
    CHECK(count == 3);
    rv_extreme small[1];
    CHECK(rv_find_important_extremes(s, 1.0, small, 1, &count) == RV_ERR_BUFFER_TOO_SMALL);
    std::vector<rv_extreme> ex(count);
    REQUIRE(rv_find_important_extremes(s, 1.0, ex.data(), ex.size(), &count) == RV_OK);
    CHECK(ex[0].index == 1);
    CHECK(ex[0].kind == 1);
    CHECK(ex[1].kind == -1);

    rv_emrt_config cfg = rv_emrt_config_default();
    CHECK(cfg.c_threshold == 2.0);
    cfg.c_threshold = 1.0;
    cfg.use_reference_mean = 1;
    cfg.reference_mean = 0.0;
    double emrt = 0;
    REQUIRE(rv_compute_emrt(s, &cfg, &emrt) == RV_OK);
    CHECK(emrt == 1.0);
    rv_series_destroy(s);

    rv_series* mono = make_series({1, 2, 3, 4, 5});
    CHECK(rv_compute_emrt(mono, &cfg, &emrt) == RV_ERR_NO_EXTREMES);
    rv_series_destroy(mono);
}

TEST_CASE("simulate, fit and search") {
    rv_sim_config sim{{10.0, 0.0, 1.0}, 0.0, 10.0, 5000, 3};
    rv_series* s = nullptr;
    REQUIRE(rv_simulate_ou(&sim, &s) == RV_OK);
    rv_ou_params fit{};
    double ll = 0;
    REQUIRE(rv_fit_ou_mle(s, 10.0 / 4999.0, &fit, &ll) == RV_OK);
    CHECK(fit.mu > 5.0);
    CHECK(std::isfinite(ll));

    std::vector<double> other(rv_series_values(s), rv_series_values(s) + rv_series_length(s));
    rv_series_destroy(s);
    for (double& v : other) v += 10.0;
    sim.n_steps = 1;
    CHECK(rv_simulate_ou(&sim, &s) == RV_ERR_INVALID_PARAMS);

    rv_ou_params p{2.0, 0.0, 2.0};
    double eq = 0;
    REQUIRE(rv_sigma_eq(&p, &eq) == RV_OK);
    CHECK(eq == 1.0);
}

TEST_CASE("panel, trades and backtest") {
    oracle::TempDir dir;
    const auto a = dir.write("a.csv", "date,close\n2020-01-02,15\n2020-01-03,16\n2020-01-06,17\n2020-01-07,1\n");
    const auto b = dir.write("b.csv", "date,close\n2020-01-03,5\n2020-01-02,5\n2020-01-06,5\n");
    rv_series *sa = nullptr, *sb = nullptr;
    REQUIRE(rv_load_price_csv(a.string().c_str(), "A", &sa) == RV_OK);
    REQUIRE(rv_load_price_csv(b.string().c_str(), "B", &sb) == RV_OK);
    const rv_series* both[] = {sa, sb};
    const char* names[] = {"A", "B"};
    rv_panel* panel = nullptr;
    REQUIRE(rv_panel_align(both, names, 2, &panel) == RV_OK);
    CHECK(rv_panel_rows(panel) == 3);
    CHECK(rv_panel_dropped(panel, 0) == 1);
    CHECK(std::string(rv_panel_ticker(panel, 1)) == "B");

    const double coeffs[] = {1.0, -1.0};
    rv_series* x = nullptr;
    REQUIRE(rv_combine(panel, coeffs, 2, &x) == RV_OK);
    CHECK(rv_series_values(x)[0] == 10.0);

    const size_t times[] = {0, 2};
    const int actions[] = {1, -1};
    rv_trades* tl = nullptr;
    REQUIRE(rv_trades_create(times, actions, 2, "hand", &tl) == RV_OK);
    CHECK(rv_trades_violations(tl) == 0);

    rv_backtest_config cfg = rv_backtest_config_default();
    rv_report* rep = nullptr;
    REQUIRE(rv_run_backtest(x, panel, coeffs, 2, tl, &cfg, &rep) == RV_OK);
    const rv_series* w = rv_report_wealth(rep);
    CHECK(rv_series_length(w) == 4);
    CHECK(rv_series_values(w)[3] == 110.0);
    rv_metrics m{};
    rv_report_metrics(rep, &m);
    CHECK(m.cumul_pnl == doctest::Approx(10.0));

    const size_t bad_times[] = {0, 9};
    rv_trades* bad = nullptr;
    REQUIRE(rv_trades_create(bad_times, actions, 2, "bad", &bad) == RV_OK);
    rv_report* none = nullptr;
    CHECK(rv_run_backtest(x, nullptr, nullptr, 0, bad, &cfg, &none) == RV_ERR_OUT_OF_BOUNDS_TRADE);

    rv_pair_score scores[1];
    size_t count = 0;
    REQUIRE(rv_ssd_rank(panel, scores, 1, &count) == RV_OK);
    CHECK(count == 1);

    rv_trades_destroy(bad);
    rv_report_destroy(rep);
    rv_trades_destroy(tl);
    rv_series_destroy(x);
    rv_panel_destroy(panel);
    rv_series_destroy(sa);
    rv_series_destroy(sb);
}

TEST_CASE("agent lifecycle") {
    rv_env_config env = rv_env_config_default();
    CHECK(env.paths == 10000);
    env.paths = 20;
    env.n_steps = 60;
    env.horizon = 60;
    rv_rl_config cfg = rv_rl_config_default();
    CHECK(cfg.lookback == 4);
    cfg.episodes = 2;
    rv_qtable* q = nullptr;
    REQUIRE(rv_train(&env, &cfg, &q) == RV_OK);
    CHECK(rv_qtable_states(q) == 512);

    rv_series* path = nullptr;
    double theta = 0;
    REQUIRE(rv_env_path(&env, 20, &path, &theta) == RV_OK);
    CHECK(theta == 1.0);
    rv_trades* tl = nullptr;
    REQUIRE(rv_evaluate(q, path, &cfg, &tl) == RV_OK);
    CHECK(rv_trades_violations(tl) == 0);

    oracle::TempDir dir;
    const auto csv = (dir.path() / "q.csv").string(), json = (dir.path() / "q.json").string();
    REQUIRE(rv_qtable_save(q, &cfg, csv.c_str(), json.c_str(), nullptr) == RV_OK);
    rv_qtable* back = nullptr;
    rv_rl_config back_cfg{};
    REQUIRE(rv_qtable_load(csv.c_str(), json.c_str(), &back, &back_cfg) == RV_OK);
    CHECK(back_cfg.episodes == 2);
    for (size_t s = 0; s < rv_qtable_states(q); ++s)
        for (int a : {-1, 0, 1}) {
            double v1 = 0, v2 = 0;
            rv_qtable_value(q, s, a, &v1);
            rv_qtable_value(back, s, a, &v2);
            CHECK(v1 == v2);
        }
    CHECK(rv_qtable_load((dir.path() / "missing.csv").string().c_str(), json.c_str(), &back, &back_cfg) ==
          RV_ERR_MISSING_FILE);

    int acts[2];
    CHECK(rv_legal_actions(RV_FLAT, acts) == 2);
    CHECK(acts[0] == 0);
    CHECK(acts[1] == 1);
    CHECK(rv_q_update(q, 0, -1, 1.0, 1, 0.1, 0.9) == RV_ERR_ILLEGAL_ACTION);
    CHECK(rv_reward(1, 0.8, 1.0, 0.0) == doctest::Approx(0.2));

    rv_trades_destroy(tl);
    rv_series_destroy(path);
    rv_qtable_destroy(back);
    rv_qtable_destroy(q);
}
