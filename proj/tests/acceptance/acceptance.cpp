// End-to-end acceptance gate. Prints one PASS/FAIL line per criterion and
// exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include <json.hpp>

#include "oracles.hpp"
#include "revert/backtest.hpp"
#include "revert/emrt.hpp"
#include "revert/error.hpp"
#include "revert/rl.hpp"
#include "revert/rng.hpp"
#include "revert/spread_search.hpp"
#include "revert/strategies.hpp"
#include "synthetic.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace revert;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

std::string num(double v, int prec = 4) {
    std::ostringstream ss;
    ss.precision(prec);
    ss << v;
    return ss.str();
}

std::string quote(const fs::path& p) { return "'" + p.string() + "'"; }

// Runs one CLI subcommand with its outputs redirected into `out`.
bool run_cli(const std::string& command, const fs::path& config, const fs::path& out) {
    const fs::path log = out.parent_path() / (out.filename().string() + ".log");
    const std::string cmd = "REVERT_OUTPUT_DIR=" + quote(out) + " " + quote(REVERT_CLI) + " " + command + " -c " +
                            quote(config) + " >>" + quote(log) + " 2>&1";
    return std::system(cmd.c_str()) == 0;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

// Data rows of a CLI CSV, skipping the provenance comment and header.
std::vector<std::vector<std::string>> csv_rows(const fs::path& p) {
    std::istringstream in(slurp(p));
    std::vector<std::vector<std::string>> rows;
    std::string line;
    bool header = false;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            header = true;
            continue;
        }
        std::vector<std::string> fields;
        std::string f;
        std::istringstream ls(line);
        while (std::getline(ls, f, ',')) fields.push_back(f);
        if (!line.empty() && line.back() == ',') fields.emplace_back();
        rows.push_back(fields);
    }
    return rows;
}

const fs::path kConfigs = REVERT_CONFIG_DIR;
const std::vector<std::string> kPipeline{"fit-spread", "train", "evaluate", "benchmark", "backtest", "report"};

bool run_pipeline(const fs::path& out) {
    for (const auto& c : kPipeline)
        if (!run_cli(c, kConfigs / "pipeline.json", out)) return false;
    return true;
}

Outcome table1_trend(const fs::path& work) {
    const fs::path out = work / "table1";
    const auto start = std::chrono::steady_clock::now();
    if (!run_cli("table1", kConfigs / "table1.json", out)) return {false, "table1 command failed"};
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const auto rows = csv_rows(out / "table1.csv");
    if (rows.size() != 10) return {false, "expected 10 rows, got " + std::to_string(rows.size())};
    std::vector<double> mu, emrt;
    for (const auto& r : rows) {
        mu.push_back(std::stod(r.at(0)));
        emrt.push_back(std::stod(r.at(1)));
    }
    const double rho = oracle::spearman(mu, emrt);
    const double lo = emrt.front(), hi = emrt.back();
    const bool ok = mu.front() == 2.0 && mu.back() == 20.0 && rho <= -0.9 && std::abs(lo - 98.79) <= 0.25 * 98.79 &&
                    std::abs(hi - 31.15) <= 0.25 * 31.15 && secs <= 60.0;
    return {ok, "spearman=" + num(rho) + " emrt(2)=" + num(lo) + " emrt(20)=" + num(hi) + " time=" + num(secs, 3) + "s"};
}

Outcome emrt_oracle() {
    std::mt19937_64 rng(20240501);
    std::uniform_int_distribution<int> len(3, 50), step(-3, 3);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> cdist(0.25, 2.5);
    std::size_t mismatches = 0, important = 0;
    for (int trial = 0; trial < 500; ++trial) {
        const int n = len(rng);
        std::vector<double> x(n);
        double v = 0.0;
        for (auto& e : x) {
            v += trial % 2 ? static_cast<double>(step(rng)) : normal(rng);
            e = v;
        }
        const double c = cdist(rng);
        if (oracle::sample_std(x) == 0.0) {
            --trial;  // flat walk, no threshold to test against
            continue;
        }
        std::vector<int> got(n, 0);
        for (const auto& p : find_important_extremes(Series(x), c))
            got[p.index] = p.kind == ExtremeKind::Minimum ? -1 : 1;
        const auto want = oracle::important_extremes_bruteforce(x, c);
        for (int i = 0; i < n; ++i) {
            mismatches += got[i] != want[i];
            important += want[i] != 0;
        }
    }
    const double period = 80.0;
    std::vector<double> s(800);
    for (std::size_t t = 0; t < s.size(); ++t) s[t] = std::sin(2.0 * std::numbers::pi * static_cast<double>(t) / period);
    EmrtConfig cfg;
    cfg.c_threshold = 1.0;
    const double e = compute_emrt(Series(s), cfg);
    const bool ok = mismatches == 0 && std::abs(e - period / 4.0) <= 1.0;
    return {ok, "mismatches=" + std::to_string(mismatches) + " (of " + std::to_string(important) +
                    " oracle extremes) sinusoid=" + num(e) + " vs " + num(period / 4.0)};
}

Outcome coefficient_recovery() {
    int spread_hits = 0, b_hits = 0;
    double worst_a = 0.0, worst_b = 0.0;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        const SearchResult r = search_coefficients(synthetic::half_pair(seed), {});
        const double err = std::abs(r.coefficients.at(1) + 0.5);
        worst_a = std::max(worst_a, err);
        spread_hits += err <= 0.05;

        auto [s1, s2] = synthetic::ou_pair(seed);
        const double eb = std::abs(ou_fit_pair(s1, s2).b - 0.7);
        worst_b = std::max(worst_b, eb);
        b_hits += eb <= 0.05;
    }
    return {spread_hits >= 9 && b_hits >= 9, "a2 within 0.05 on " + std::to_string(spread_hits) +
                                                 "/10 (max err " + num(worst_a) + "), B within 0.05 on " +
                                                 std::to_string(b_hits) + "/10 (max err " + num(worst_b) + ")"};
}

Outcome toy_mdp() {
    double worst = 0.0;
    const std::vector<oracle::ToyMdp> mdps{{0.0, -0.5, 1.0, 0.2, 0.9}, {0.1, -1.0, 2.0, -0.3, 0.8}, {-0.2, 0.3, 0.5, 0.0, 0.95}};
    for (const auto& mdp : mdps) {
        const auto q_star = oracle::value_iteration(mdp);
        QTable t(1);
        const std::vector<double> window{100.0, 101.0};
        const std::size_t flat = state_index(window, 3.0, Position::Flat);
        const std::size_t held = state_index(window, 3.0, Position::Long);
        for (int sweep = 0; sweep < 6000; ++sweep) {
            const double alpha = std::max(0.01, std::pow(0.995, sweep));
            q_update(t, flat, Action::Hold, mdp.r_hold_flat, flat, alpha, mdp.gamma);
            q_update(t, flat, Action::Buy, mdp.r_buy, held, alpha, mdp.gamma);
            q_update(t, held, Action::Sell, mdp.r_sell, flat, alpha, mdp.gamma);
            q_update(t, held, Action::Hold, mdp.r_hold_long, held, alpha, mdp.gamma);
        }
        worst = std::max({worst, std::abs(t.value(flat, Action::Hold) - q_star[0][1]),
                          std::abs(t.value(flat, Action::Buy) - q_star[0][2]),
                          std::abs(t.value(held, Action::Sell) - q_star[1][0]),
                          std::abs(t.value(held, Action::Hold) - q_star[1][1])});
    }
    return {worst <= 1e-6, "max-norm gap " + num(worst, 3) + " over " + std::to_string(mdps.size()) + " MDPs"};
}

// Uniform choice between the two legal actions at every decision step, closed at the end.
TradeList random_legal(std::size_t n, std::size_t lookback, Rng& rng) {
    TradeList out;
    bool long_now = false;
    std::bernoulli_distribution coin(0.5);
    for (std::size_t t = lookback; t + 1 < n; ++t) {
        if (coin(rng)) {
            out.events.push_back({t, long_now ? -1 : 1});
            long_now = !long_now;
        }
    }
    if (long_now) out.events.push_back({n - 1, -1});
    return out;
}

QTable trained_agent(RLConfig& cfg) {
    EnvConfig env;  // mu = 1, theta = 1, sigma = 0.1, 252 steps, 10000 paths
    env.seed = derive_seed(7, "acceptance/train/env");
    cfg = RLConfig{};
    cfg.seed = derive_seed(7, "acceptance/train/rl");
    return train(make_env(env), cfg);
}

Outcome rl_profit() {
    const auto start = std::chrono::steady_clock::now();
    RLConfig cfg;
    const QTable q = trained_agent(cfg);
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    EnvConfig fresh;
    fresh.paths = 100;
    fresh.seed = derive_seed(7, "acceptance/evaluate/env");
    Rng coin = make_rng(7, "acceptance/random-baseline");
    const BacktestConfig bt;
    double rl = 0.0, hold = 0.0, rnd = 0.0;
    for (std::size_t i = 0; i < fresh.paths; ++i) {
        const EnvPath p = make_env_path(fresh, i);
        rl += run_backtest(p.series, {}, evaluate(q, p.series, cfg), bt).metrics.cumul_pnl;
        hold += run_backtest(p.series, {}, TradeList{}, bt).metrics.cumul_pnl;
        rnd += run_backtest(p.series, {}, random_legal(p.series.size(), cfg.lookback, coin), bt).metrics.cumul_pnl;
    }
    rl /= 100.0;
    hold /= 100.0;
    rnd /= 100.0;
    const bool ok = rl > 0.0 && rl > hold && rl >= rnd + 50.0 && secs <= 600.0;
    return {ok, "mean CumulPnL rl=" + num(rl) + "% hold=" + num(hold) + "% random=" + num(rnd) +
                    "% train=" + num(secs, 3) + "s"};
}

Outcome legality() {
    Rng rng = make_rng(99, "acceptance/legality");
    std::uniform_int_distribution<int> len(6, 300);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::size_t bad = 0, rollouts = 0, trades = 0;
    std::vector<QTable> tables;
    for (std::size_t l = 1; l <= 4; ++l) {
        QTable t(l);
        for (std::size_t s = 0; s < t.states(); ++s)
            for (Action a : legal_actions(t.position_of(s))) t.set_value(s, a, normal(rng));
        tables.push_back(std::move(t));
    }
    RLConfig trained_cfg;
    tables.push_back(trained_agent(trained_cfg));

    for (int r = 0; r < 10000; ++r) {
        const std::size_t n = static_cast<std::size_t>(len(rng));
        std::vector<double> x(n);
        const double speed = 0.02 + 0.9 * unit(rng), level = 5.0 + 20.0 * unit(rng), vol = 0.05 + 2.0 * unit(rng);
        double v = level;
        for (auto& e : x) {
            e = std::max(0.5, v);
            v += speed * (level - v) + vol * normal(rng);
        }
        const Series s(x);
        TradeList list;
        switch (r % 3) {
            case 0: {
                const QTable& t = tables[static_cast<std::size_t>(r) % tables.size()];
                RLConfig cfg;
                cfg.lookback = t.lookback();
                list = evaluate(t, s, cfg);
                break;
            }
            case 1:
                list = dm_signals(s, level + normal(rng), 0.1 + vol * unit(rng), 2.0 * unit(rng),
                                  unit(rng) < 0.5 ? CloseRule::Band : CloseRule::Mean);
                break;
            default:
                list = ou_signals(s, OUParams{0.1 + 10.0 * unit(rng), level + normal(rng), 0.1 + vol},
                                  unit(rng), unit(rng) < 0.5 ? CloseRule::Band : CloseRule::Mean);
        }
        ++rollouts;
        trades += list.events.size();
        bad += count_violations(list) + !list.ends_flat();
        for (const auto& e : list.events) bad += e.time >= n;
    }
    return {bad == 0 && rollouts == 10000, std::to_string(bad) + " violations over " + std::to_string(rollouts) +
                                              " rollouts (" + std::to_string(trades) + " trade events)"};
}

Outcome ledger_equivalence() {
    Rng rng = make_rng(5, "acceptance/ledger");
    std::uniform_int_distribution<int> len(5, 400), assets(1, 3);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> normal(0.0, 1.0);
    double worst = 0.0;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = static_cast<std::size_t>(len(rng)), m = static_cast<std::size_t>(assets(rng));
        std::vector<double> prices(n * m), coeffs(m);
        coeffs[0] = 1.0;
        for (std::size_t j = 1; j < m; ++j) coeffs[j] = -3.0 + 6.0 * unit(rng);
        for (std::size_t j = 0; j < m; ++j) {
            double v = 20.0 + 80.0 * unit(rng);
            for (std::size_t t = 0; t < n; ++t) {
                prices[t * m + j] = v;
                v = std::max(1.0, v + normal(rng));
            }
        }
        const PricePanel panel(synthetic::business_days(n), std::vector<std::string>(m, "X"), prices);
        std::vector<double> spread(n), basis(n);
        for (std::size_t t = 0; t < n; ++t)
            for (std::size_t j = 0; j < m; ++j) {
                spread[t] += coeffs[j] * prices[t * m + j];
                basis[t] += std::abs(coeffs[j]) * prices[t * m + j];
            }
        std::vector<std::pair<std::size_t, int>> events;
        TradeList list;
        bool long_now = false;
        for (std::size_t t = 0; t < n; ++t)
            if (unit(rng) < 0.1) {
                events.push_back({t, long_now ? -1 : 1});
                list.events.push_back({t, long_now ? -1 : 1});
                long_now = !long_now;
            }
        const double initial = 1.0 + 1000.0 * unit(rng);
        const auto want = oracle::ledger_replay(spread, basis, events, initial);
        BacktestConfig cfg;
        cfg.initial_wealth = initial;
        BacktestReport got;
        try {
            got = run_backtest(Series(spread), Legs{&panel, coeffs}, list, cfg);
        } catch (const Error& e) {
            return {false, std::string("backtest threw: ") + e.what()};
        }
        if (got.wealth.size() != want.size()) return {false, "wealth length mismatch"};
        for (std::size_t t = 0; t < want.size(); ++t)
            worst = std::max(worst, std::abs(got.wealth[t] - want[t]) / std::abs(want[t]));
    }
    const Metrics hand = compute_metrics(Series(std::vector<double>{100.0, 110.0, 99.0, 121.0}));
    const bool ok = worst <= 1e-10 && hand.max_drawdown == -10.0 && hand.cumul_pnl == 21.0;
    return {ok, "max rel err " + num(worst, 3) + ", hand MaxDD=" + num(hand.max_drawdown, 17) +
                    " CumulPnL=" + num(hand.cumul_pnl, 17)};
}

// Metrics recomputed from a wealth CSV without the library.
std::vector<double> oracle_metrics(const std::vector<double>& w) {
    std::vector<double> r;
    for (std::size_t t = 1; t < w.size(); ++t) r.push_back(w[t] / w[t - 1] - 1.0);
    double mean = 0.0;
    for (double v : r) mean += v;
    mean /= static_cast<double>(r.size());
    const double sd = oracle::sample_std(r);
    double peak = w[0], dd = 0.0;
    for (double v : w) {
        peak = std::max(peak, v);
        dd = std::min(dd, v / peak - 1.0);
    }
    return {100.0 * mean, 100.0 * sd, sd > 0 ? mean / sd : 0.0, 100.0 * dd, 100.0 * (w.back() / w.front() - 1.0)};
}

Outcome pipeline_report(const fs::path& work) {
    const fs::path out = work / "pipeline_a";
    if (!run_pipeline(out)) return {false, "pipeline command failed, see " + out.string() + ".log"};
    const json report = json::parse(slurp(out / "report.json"));
    const auto rows = csv_rows(out / "report.csv");
    const std::vector<std::string> runs{"rl", "dm", "ou"};
    if (rows.size() != runs.size()) return {false, "report.csv has " + std::to_string(rows.size()) + " rows"};
    double worst = 0.0;
    bool finite = true;
    std::string labels;
    for (std::size_t i = 0; i < runs.size(); ++i) {
        labels += (i ? "," : "") + rows[i].at(0);
        std::vector<double> w;
        for (const auto& r : csv_rows(out / ("wealth_" + runs[i] + ".csv"))) w.push_back(std::stod(r.at(2)));
        const auto want = oracle_metrics(w);
        for (std::size_t k = 0; k < 5; ++k) {
            const double got = std::stod(rows[i].at(k + 1));
            finite = finite && std::isfinite(got);
            worst = std::max(worst, std::abs(got - want[k]) / std::max(1.0, std::abs(want[k])));
        }
    }
    const bool ok = report.value("consistent", false) && finite && worst <= 1e-9;
    return {ok, "rows " + labels + ", consistent=" + (report.value("consistent", false) ? "true" : "false") +
                    ", oracle gap " + num(worst, 3)};
}

std::vector<fs::path> tree(const fs::path& root) {
    std::vector<fs::path> files;
    for (const auto& e : fs::recursive_directory_iterator(root))
        if (e.is_regular_file()) files.push_back(fs::relative(e.path(), root));
    std::sort(files.begin(), files.end());
    return files;
}

Outcome determinism(const fs::path& work) {
    std::size_t compared = 0;
    std::string diff;
    auto compare = [&](const fs::path& a, const fs::path& b) {
        const auto fa = tree(a), fb = tree(b);
        if (fa != fb) diff += " file sets differ under " + a.filename().string();
        for (const auto& f : fa) {
            if (!fs::exists(b / f)) continue;
            ++compared;
            if (slurp(a / f) != slurp(b / f)) diff += " " + f.string();
        }
    };
    if (!fs::exists(work / "pipeline_a") && !run_pipeline(work / "pipeline_a")) return {false, "pipeline failed"};
    if (!run_pipeline(work / "pipeline_b")) return {false, "second pipeline run failed"};
    compare(work / "pipeline_a", work / "pipeline_b");
    for (const char* tag : {"sim_a", "sim_b"})
        if (!run_cli("simulate-ou", kConfigs / "simulate.json", work / tag) ||
            !run_cli("emrt", kConfigs / "simulate.json", work / tag))
            return {false, "simulate/emrt failed"};
    compare(work / "sim_a", work / "sim_b");
    if (!run_cli("table1", kConfigs / "table1.json", work / "table1_b")) return {false, "table1 rerun failed"};
    if (fs::exists(work / "table1")) compare(work / "table1", work / "table1_b");
    return {diff.empty() && compared > 0,
            std::to_string(compared) + " files compared" + (diff.empty() ? ", all identical" : ", differ:" + diff)};
}

}  // namespace

int main() {
    const fs::path work = fs::temp_directory_path() / ("revert_acceptance_" + std::to_string(::getpid()));
    fs::remove_all(work);
    fs::create_directories(work);

    const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria{
        {"EMRT falls with reversion speed", [&] { return table1_trend(work); }},
        {"EMRT oracle equivalence", emrt_oracle},
        {"coefficient recovery", coefficient_recovery},
        {"Q-learning toy MDP", toy_mdp},
        {"RL trading profitability", rl_profit},
        {"legality invariants", legality},
        {"backtest ledger equivalence", ledger_equivalence},
        {"end-to-end report", [&] { return pipeline_report(work); }},
        {"determinism", [&] { return determinism(work); }},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        Outcome o;
        try {
            o = criteria[i].second();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        failed += !o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << " (" << criteria[i].first
                  << "): " << o.detail << std::endl;
    }
    if (failed == 0) fs::remove_all(work);
    return failed == 0 ? 0 : 1;
}
