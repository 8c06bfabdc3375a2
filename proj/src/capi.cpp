#include "revert/revert.h"

#include <cstring>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>

#include "revert/backtest.hpp"
#include "revert/emrt.hpp"
#include "revert/error.hpp"
#include "revert/marketdata.hpp"
#include "revert/ou.hpp"
#include "revert/qtable_io.hpp"
#include "revert/rl.hpp"
#include "revert/rng.hpp"
#include "revert/spread_search.hpp"
#include "revert/strategies.hpp"
#include "revert/trades.hpp"

struct rv_series {
    revert::Series value;
    std::vector<std::int32_t> days;  // mirror of value.dates for the C view
};

struct rv_panel {
    revert::PricePanel value;
};

struct rv_search_result {
    revert::SearchResult value;
    rv_series spread;
};

struct rv_trades {
    revert::TradeList value;
};

struct rv_qtable {
    revert::QTable value;
};

struct rv_report {
    revert::BacktestReport value;
    rv_series wealth;
};

namespace {

using revert::Errc;
using revert::Error;

struct BufferTooSmall : std::runtime_error {
    using std::runtime_error::runtime_error;
};

thread_local std::string g_message;
thread_local std::size_t g_line = 0;

rv_status to_status(Errc code) {
    switch (code) {
        case Errc::InvalidArgument: return RV_ERR_INVALID_ARGUMENT;
        case Errc::MissingFile: return RV_ERR_MISSING_FILE;
        case Errc::MalformedRow: return RV_ERR_MALFORMED_ROW;
        case Errc::NonPositivePrice: return RV_ERR_NON_POSITIVE_PRICE;
        case Errc::EmptySeries: return RV_ERR_EMPTY_SERIES;
        case Errc::EmptyIntersection: return RV_ERR_EMPTY_INTERSECTION;
        case Errc::DimensionMismatch: return RV_ERR_DIMENSION_MISMATCH;
        case Errc::InvalidParams: return RV_ERR_INVALID_PARAMS;
        case Errc::DegenerateSeries: return RV_ERR_DEGENERATE_SERIES;
        case Errc::NonMeanReverting: return RV_ERR_NON_MEAN_REVERTING;
        case Errc::NoExtremes: return RV_ERR_NO_EXTREMES;
        case Errc::NoCompletePairs: return RV_ERR_NO_COMPLETE_PAIRS;
        case Errc::NoFeasibleCandidate: return RV_ERR_NO_FEASIBLE_CANDIDATE;
        case Errc::GridTooLarge: return RV_ERR_GRID_TOO_LARGE;
        case Errc::WindowTooShort: return RV_ERR_WINDOW_TOO_SHORT;
        case Errc::ZeroReferencePrice: return RV_ERR_ZERO_REFERENCE_PRICE;
        case Errc::IllegalAction: return RV_ERR_ILLEGAL_ACTION;
        case Errc::NoFeasibleB: return RV_ERR_NO_FEASIBLE_B;
        case Errc::DegenerateStd: return RV_ERR_DEGENERATE_STD;
        case Errc::OutOfBoundsTrade: return RV_ERR_OUT_OF_BOUNDS_TRADE;
        case Errc::NonPositiveBasis: return RV_ERR_NON_POSITIVE_BASIS;
        case Errc::DegenerateWealth: return RV_ERR_DEGENERATE_WEALTH;
        case Errc::Io: return RV_ERR_IO;
    }
    return RV_ERR_INTERNAL;
}

rv_status fail(rv_status status, std::string message, std::size_t line = 0) {
    g_message = std::move(message);
    g_line = line;
    return status;
}

template <class F>
rv_status guarded(F&& body) noexcept {
    try {
        body();
        g_message.clear();
        g_line = 0;
        return RV_OK;
    } catch (const Error& e) {
        return fail(to_status(e.code()), e.what(), e.line().value_or(0));
    } catch (const BufferTooSmall& e) {
        return fail(RV_ERR_BUFFER_TOO_SMALL, e.what());
    } catch (const std::bad_alloc&) {
        return fail(RV_ERR_INTERNAL, "out of memory");
    } catch (const std::exception& e) {
        return fail(RV_ERR_INTERNAL, e.what());
    } catch (...) {
        return fail(RV_ERR_INTERNAL, "unknown exception");
    }
}

#define RV_REQUIRE(cond)                                                               \
    do {                                                                               \
        if (!(cond)) return fail(RV_ERR_INVALID_ARGUMENT, "null or invalid argument: " #cond); \
    } while (0)

rv_series* wrap(revert::Series s) {
    auto* out = new rv_series{std::move(s), {}};
    for (const auto& d : out->value.dates) out->days.push_back(d.days);
    return out;
}

void refresh_days(rv_series& s) {
    s.days.clear();
    for (const auto& d : s.value.dates) s.days.push_back(d.days);
}

revert::Action to_action(int a) {
    if (a < -1 || a > 1) throw Error(Errc::IllegalAction, "action must be -1, 0 or +1");
    return static_cast<revert::Action>(a);
}

revert::RLConfig from_c(const rv_rl_config& c) {
    revert::RLConfig r;
    r.lookback = c.lookback;
    r.move_threshold = c.move_threshold;
    r.learning_rate = c.learning_rate;
    r.discount = c.discount;
    r.epsilon = c.epsilon;
    r.episodes = c.episodes;
    r.transaction_cost = c.transaction_cost;
    r.interest_rate = c.interest_rate;
    r.seed = c.seed;
    r.encoding = c.encoding == RV_ENCODING_NORM_DIFF ? revert::Encoding::NormDiff : revert::Encoding::Percent;
    r.encoding_scale = c.encoding_scale;
    return r;
}

rv_rl_config to_c(const revert::RLConfig& r) {
    rv_rl_config c{};
    c.lookback = r.lookback;
    c.move_threshold = r.move_threshold;
    c.learning_rate = r.learning_rate;
    c.discount = r.discount;
    c.epsilon = r.epsilon;
    c.episodes = r.episodes;
    c.transaction_cost = r.transaction_cost;
    c.interest_rate = r.interest_rate;
    c.seed = r.seed;
    c.encoding = r.encoding == revert::Encoding::NormDiff ? RV_ENCODING_NORM_DIFF : RV_ENCODING_PCT;
    c.encoding_scale = r.encoding_scale;
    return c;
}

revert::EnvConfig from_c(const rv_env_config& c) {
    revert::EnvConfig e;
    e.mu = {c.mu.lo, c.mu.hi};
    e.theta = {c.theta.lo, c.theta.hi};
    e.sigma = {c.sigma.lo, c.sigma.hi};
    e.horizon = c.horizon;
    e.n_steps = c.n_steps;
    e.paths = c.paths;
    if (c.has_x0) e.x0 = c.x0;
    e.seed = c.seed;
    return e;
}

revert::EmrtConfig from_c(const rv_emrt_config& c) {
    revert::EmrtConfig e;
    e.c_threshold = c.c_threshold;
    if (c.use_reference_mean) e.reference_mean = c.reference_mean;
    e.extremes = c.extremes == RV_EXTREMES_MAXIMA ? revert::ExtremeMode::MaximaOnly : revert::ExtremeMode::Both;
    return e;
}

revert::OUParams from_c(const rv_ou_params& p) { return {p.mu, p.theta, p.sigma}; }
rv_ou_params to_c(const revert::OUParams& p) { return {p.mu, p.theta, p.sigma}; }

revert::CloseRule from_c(rv_close_rule r) {
    return r == RV_CLOSE_MEAN ? revert::CloseRule::Mean : revert::CloseRule::Band;
}

void to_c(const revert::Metrics& m, rv_metrics* out) {
    out->daily_ret_mean = m.daily_ret_mean;
    out->daily_ret_std = m.daily_ret_std;
    out->daily_sharpe = m.daily_sharpe;
    out->max_drawdown = m.max_drawdown;
    out->cumul_pnl = m.cumul_pnl;
}

}  // namespace

extern "C" {

const char* rv_status_name(rv_status status) {
    switch (status) {
        case RV_OK: return "Ok";
        case RV_ERR_BUFFER_TOO_SMALL: return "BufferTooSmall";
        case RV_ERR_INTERNAL: return "Internal";
        default: break;
    }
    if (status > RV_OK && status <= RV_ERR_IO) return revert::errc_name(static_cast<Errc>(status - 1));
    return "Unknown";
}

const char* rv_last_error_message(void) { return g_message.c_str(); }
size_t rv_last_error_line(void) { return g_line; }
const char* rv_version(void) { return "0.1.0"; }

uint64_t rv_derive_seed(uint64_t master, const char* stream) {
    return revert::derive_seed(master, stream ? stream : "");
}

/* series / market data */

rv_status rv_series_create(const double* values, size_t count, rv_series** out) {
    RV_REQUIRE(out && (values || count == 0));
    return guarded([&] { *out = wrap(revert::Series(std::vector<double>(values, values + count))); });
}

void rv_series_destroy(rv_series* series) { delete series; }
size_t rv_series_length(const rv_series* series) { return series ? series->value.size() : 0; }
const double* rv_series_values(const rv_series* series) { return series ? series->value.values.data() : nullptr; }
const int32_t* rv_series_dates(const rv_series* series) {
    return series && !series->days.empty() ? series->days.data() : nullptr;
}

rv_status rv_format_date(int32_t days, char* out, size_t capacity) {
    RV_REQUIRE(out);
    if (capacity < 11) return fail(RV_ERR_BUFFER_TOO_SMALL, "date buffer needs 11 bytes");
    return guarded([&] {
        const std::string s = revert::Date{days}.iso();
        std::memcpy(out, s.c_str(), s.size() + 1);
    });
}

rv_status rv_parse_date(const char* iso, int32_t* days) {
    RV_REQUIRE(iso && days);
    return guarded([&] { *days = revert::Date::parse_iso(iso).days; });
}

rv_status rv_load_price_csv(const char* path, const char* ticker, rv_series** out) {
    RV_REQUIRE(path && out);
    return guarded([&] { *out = wrap(revert::load_price_csv(path, ticker ? ticker : "")); });
}

rv_status rv_normalize_first(const rv_series* series, rv_series** out) {
    RV_REQUIRE(series && out);
    return guarded([&] { *out = wrap(revert::normalize_first(series->value)); });
}

rv_status rv_panel_align(const rv_series* const* series, const char* const* tickers, size_t count, rv_panel** out) {
    RV_REQUIRE(series && tickers && out);
    return guarded([&] {
        std::vector<revert::TickerSeries> inputs;
        for (size_t i = 0; i < count; ++i) {
            if (!series[i] || !tickers[i]) throw Error(Errc::InvalidArgument, "null series or ticker");
            inputs.push_back({tickers[i], series[i]->value});
        }
        *out = new rv_panel{revert::align(inputs)};
    });
}

void rv_panel_destroy(rv_panel* panel) { delete panel; }
size_t rv_panel_rows(const rv_panel* panel) { return panel ? panel->value.rows() : 0; }
size_t rv_panel_assets(const rv_panel* panel) { return panel ? panel->value.assets() : 0; }

const char* rv_panel_ticker(const rv_panel* panel, size_t asset) {
    if (!panel || asset >= panel->value.assets()) return nullptr;
    return panel->value.tickers()[asset].c_str();
}

double rv_panel_price(const rv_panel* panel, size_t row, size_t asset) {
    if (!panel || row >= panel->value.rows() || asset >= panel->value.assets()) return 0.0;
    return panel->value.price(row, asset);
}

int32_t rv_panel_date(const rv_panel* panel, size_t row) {
    if (!panel || row >= panel->value.rows()) return 0;
    return panel->value.dates()[row].days;
}

size_t rv_panel_dropped(const rv_panel* panel, size_t asset) {
    if (!panel || asset >= panel->value.assets()) return 0;
    return panel->value.dropped()[asset];
}

rv_status rv_panel_column(const rv_panel* panel, size_t asset, rv_series** out) {
    RV_REQUIRE(panel && out);
    return guarded([&] { *out = wrap(panel->value.column(asset)); });
}

rv_status rv_panel_slice(const rv_panel* panel, size_t begin_row, size_t end_row, rv_panel** out) {
    RV_REQUIRE(panel && out);
    return guarded([&] { *out = new rv_panel{panel->value.slice_rows(begin_row, end_row)}; });
}

rv_status rv_panel_select(const rv_panel* panel, const size_t* assets, size_t count, rv_panel** out) {
    RV_REQUIRE(panel && out && (assets || count == 0));
    return guarded([&] { *out = new rv_panel{panel->value.select(std::span<const size_t>(assets, count))}; });
}

size_t rv_panel_lower_bound(const rv_panel* panel, int32_t days) {
    return panel ? panel->value.lower_bound(revert::Date{days}) : 0;
}

rv_status rv_combine(const rv_panel* panel, const double* coefficients, size_t count, rv_series** out) {
    RV_REQUIRE(panel && out && (coefficients || count == 0));
    return guarded([&] { *out = wrap(revert::combine(panel->value, std::span<const double>(coefficients, count))); });
}

/* OU */

rv_status rv_simulate_ou(const rv_sim_config* config, rv_series** out) {
    RV_REQUIRE(config && out);
    return guarded([&] {
        revert::SimConfig c;
        c.params = from_c(config->params);
        c.x0 = config->x0;
        c.horizon = config->horizon;
        c.n_steps = config->n_steps;
        c.seed = config->seed;
        *out = wrap(revert::simulate_ou(c));
    });
}

rv_status rv_fit_ou_mle(const rv_series* series, double dt, rv_ou_params* out, double* avg_log_likelihood) {
    RV_REQUIRE(series && out);
    return guarded([&] {
        const auto fit = revert::fit_ou_mle(series->value, dt);
        *out = to_c(fit.params);
        if (avg_log_likelihood) *avg_log_likelihood = fit.avg_log_likelihood;
    });
}

rv_status rv_sigma_eq(const rv_ou_params* params, double* out) {
    RV_REQUIRE(params && out);
    return guarded([&] { *out = revert::sigma_eq(from_c(*params)); });
}

/* EMRT */

rv_emrt_config rv_emrt_config_default(void) { return {2.0, 0, 0.0, RV_EXTREMES_BOTH}; }

rv_status rv_find_important_extremes(const rv_series* series, double c, rv_extreme* buffer, size_t capacity,
                                     size_t* count) {
    RV_REQUIRE(series && count);
    return guarded([&] {
        const auto ex = revert::find_important_extremes(series->value, c);
        *count = ex.size();
        if (!buffer) return;
        if (capacity < ex.size()) throw BufferTooSmall("extreme buffer too small");
        for (size_t i = 0; i < ex.size(); ++i)
            buffer[i] = {ex[i].index, ex[i].kind == revert::ExtremeKind::Minimum ? -1 : 1, ex[i].value};
    });
}

rv_status rv_build_tau_sequence(const rv_series* series, const rv_emrt_config* config, rv_tau* buffer,
                                size_t capacity, size_t* count, double* reference_mean) {
    RV_REQUIRE(series && config && count);
    return guarded([&] {
        const auto seq = revert::build_tau_sequence(series->value, from_c(*config));
        *count = seq.taus.size();
        if (reference_mean) *reference_mean = seq.reference_mean;
        if (!buffer) return;
        if (capacity < seq.taus.size()) throw BufferTooSmall("tau buffer too small");
        for (size_t i = 0; i < seq.taus.size(); ++i)
            buffer[i] = {seq.taus[i], seq.kinds[i] == revert::TauKind::Crossing ? 1 : 0};
    });
}

rv_status rv_compute_emrt(const rv_series* series, const rv_emrt_config* config, double* out) {
    RV_REQUIRE(series && config && out);
    return guarded([&] { *out = revert::compute_emrt(series->value, from_c(*config)); });
}

/* spread search */

rv_search_config rv_search_config_default(void) {
    const revert::SearchConfig d;
    return {d.grid_min, d.grid_max, d.grid_step, d.c_threshold, 0, 0.0, d.min_spread_std, d.max_evaluations, 0};
}

rv_status rv_search_coefficients(const rv_panel* panel, const rv_search_config* config, rv_search_result** out) {
    RV_REQUIRE(panel && config && out);
    return guarded([&] {
        revert::SearchConfig c;
        c.grid_min = config->grid_min;
        c.grid_max = config->grid_max;
        c.grid_step = config->grid_step;
        c.c_threshold = config->c_threshold;
        if (config->has_variance_cap) c.variance_cap = config->variance_cap;
        c.min_spread_std = config->min_spread_std;
        c.max_evaluations = config->max_evaluations;
        c.refine_when_over_budget = config->refine_when_over_budget != 0;
        auto res = std::make_unique<rv_search_result>();
        res->value = revert::search_coefficients(panel->value, c);
        res->spread.value = res->value.spread;
        refresh_days(res->spread);
        *out = res.release();
    });
}

void rv_search_result_destroy(rv_search_result* result) { delete result; }

size_t rv_search_result_coefficients(const rv_search_result* result, double* buffer, size_t capacity) {
    if (!result) return 0;
    const auto& c = result->value.coefficients;
    if (buffer)
        for (size_t i = 0; i < c.size() && i < capacity; ++i) buffer[i] = c[i];
    return c.size();
}

double rv_search_result_emrt(const rv_search_result* result) { return result ? result->value.emrt : 0.0; }
size_t rv_search_result_evaluated(const rv_search_result* result) { return result ? result->value.evaluated : 0; }
size_t rv_search_result_skipped(const rv_search_result* result) { return result ? result->value.skipped : 0; }
int rv_search_result_exhaustive(const rv_search_result* result) { return result && result->value.exhaustive ? 1 : 0; }
const rv_series* rv_search_result_spread(const rv_search_result* result) { return result ? &result->spread : nullptr; }

/* trades */

rv_status rv_trades_create(const size_t* times, const int* actions, size_t count, const char* source, rv_trades** out) {
    RV_REQUIRE(out && ((times && actions) || count == 0));
    return guarded([&] {
        auto t = std::make_unique<rv_trades>();
        t->value.source = source ? source : "";
        for (size_t i = 0; i < count; ++i) t->value.events.push_back({times[i], actions[i]});
        *out = t.release();
    });
}

void rv_trades_destroy(rv_trades* trades) { delete trades; }
size_t rv_trades_count(const rv_trades* trades) { return trades ? trades->value.events.size() : 0; }

rv_status rv_trades_get(const rv_trades* trades, size_t i, size_t* time, int* action) {
    RV_REQUIRE(trades && time && action);
    if (i >= trades->value.events.size()) return fail(RV_ERR_INVALID_ARGUMENT, "trade index out of range");
    *time = trades->value.events[i].time;
    *action = trades->value.events[i].action;
    return RV_OK;
}

const char* rv_trades_source(const rv_trades* trades) { return trades ? trades->value.source.c_str() : ""; }
size_t rv_trades_violations(const rv_trades* trades) { return trades ? revert::count_violations(trades->value) : 0; }

/* Q-learning */

rv_rl_config rv_rl_config_default(void) { return to_c(revert::RLConfig{}); }

rv_env_config rv_env_config_default(void) {
    const revert::EnvConfig d;
    rv_env_config c{};
    c.mu = {d.mu.lo, d.mu.hi};
    c.theta = {d.theta.lo, d.theta.hi};
    c.sigma = {d.sigma.lo, d.sigma.hi};
    c.horizon = d.horizon;
    c.n_steps = d.n_steps;
    c.paths = d.paths;
    c.has_x0 = 0;
    c.x0 = 0.0;
    c.seed = d.seed;
    return c;
}

rv_status rv_qtable_create(size_t lookback, rv_qtable** out) {
    RV_REQUIRE(out);
    return guarded([&] { *out = new rv_qtable{revert::QTable(lookback)}; });
}

void rv_qtable_destroy(rv_qtable* table) { delete table; }
size_t rv_qtable_lookback(const rv_qtable* table) { return table ? table->value.lookback() : 0; }
size_t rv_qtable_states(const rv_qtable* table) { return table ? table->value.states() : 0; }

rv_status rv_qtable_value(const rv_qtable* table, size_t state, int action, double* out) {
    RV_REQUIRE(table && out);
    return guarded([&] { *out = table->value.value(state, to_action(action)); });
}

rv_status rv_qtable_set_value(rv_qtable* table, size_t state, int action, double value) {
    RV_REQUIRE(table);
    return guarded([&] {
        const auto a = to_action(action);
        if (!revert::is_legal(table->value.position_of(state), a))
            throw Error(Errc::IllegalAction, "action is not legal in this state");
        table->value.set_value(state, a, value);
    });
}

rv_status rv_qtable_visits(const rv_qtable* table, size_t state, int action, uint64_t* out) {
    RV_REQUIRE(table && out);
    return guarded([&] { *out = table->value.visits(state, to_action(action)); });
}

rv_status rv_encode_state(const double* window, size_t length, double k, rv_position position, rv_encoding encoding,
                          double scale, size_t* state) {
    RV_REQUIRE(window && state);
    return guarded([&] {
        *state = revert::encode_state(std::span<const double>(window, length), k,
                                      position == RV_LONG ? revert::Position::Long : revert::Position::Flat,
                                      encoding == RV_ENCODING_NORM_DIFF ? revert::Encoding::NormDiff
                                                                        : revert::Encoding::Percent,
                                      scale)
                     .index();
    });
}

size_t rv_legal_actions(rv_position position, int* actions) {
    const auto legal = revert::legal_actions(position == RV_LONG ? revert::Position::Long : revert::Position::Flat);
    if (actions) {
        actions[0] = static_cast<int>(legal[0]);
        actions[1] = static_cast<int>(legal[1]);
    }
    return legal.size();
}

double rv_reward(int action, double x, double theta, double cost) {
    if (action < -1 || action > 1) return 0.0;
    return revert::reward(static_cast<revert::Action>(action), x, theta, cost);
}

rv_status rv_q_update(rv_qtable* table, size_t state, int action, double reward, size_t next_state, double alpha,
                      double gamma) {
    RV_REQUIRE(table);
    return guarded([&] { revert::q_update(table->value, state, to_action(action), reward, next_state, alpha, gamma); });
}

rv_status rv_greedy_action(const rv_qtable* table, size_t state, int* action) {
    RV_REQUIRE(table && action);
    return guarded([&] { *action = static_cast<int>(revert::greedy_action(table->value, state)); });
}

rv_status rv_train(const rv_env_config* env, const rv_rl_config* config, rv_qtable** out) {
    RV_REQUIRE(env && config && out);
    return guarded([&] {
        const auto paths = revert::make_env(from_c(*env));
        *out = new rv_qtable{revert::train(paths, from_c(*config))};
    });
}

rv_status rv_env_path(const rv_env_config* env, size_t i, rv_series** out, double* theta) {
    RV_REQUIRE(env && out);
    return guarded([&] {
        const auto cfg = from_c(*env);
        cfg.validate();
        auto path = revert::make_env_path(cfg, i);
        if (theta) *theta = path.theta;
        *out = wrap(std::move(path.series));
    });
}

rv_status rv_evaluate(const rv_qtable* table, const rv_series* spread, const rv_rl_config* config, rv_trades** out) {
    RV_REQUIRE(table && spread && config && out);
    return guarded([&] { *out = new rv_trades{revert::evaluate(table->value, spread->value, from_c(*config))}; });
}

rv_status rv_qtable_save(const rv_qtable* table, const rv_rl_config* config, const char* csv_path,
                         const char* json_path, const char* comment) {
    RV_REQUIRE(table && config && csv_path && json_path);
    return guarded([&] {
        revert::save_qtable(table->value, from_c(*config), csv_path, json_path, comment ? comment : "");
    });
}

rv_status rv_qtable_load(const char* csv_path, const char* json_path, rv_qtable** out, rv_rl_config* config) {
    RV_REQUIRE(csv_path && json_path && out);
    return guarded([&] {
        auto loaded = revert::load_qtable(csv_path, json_path);
        if (config) *config = to_c(loaded.config);
        *out = new rv_qtable{std::move(loaded.table)};
    });
}

/* strategies */

rv_status rv_ssd_rank(const rv_panel* panel, rv_pair_score* buffer, size_t capacity, size_t* count) {
    RV_REQUIRE(panel && count);
    return guarded([&] {
        const auto ranked = revert::ssd_rank(panel->value);
        *count = ranked.size();
        if (!buffer) return;
        if (capacity < ranked.size()) throw BufferTooSmall("pair buffer too small");
        for (size_t i = 0; i < ranked.size(); ++i) buffer[i] = {ranked[i].first, ranked[i].second, ranked[i].ssd};
    });
}

rv_status rv_dm_signals(const rv_series* spread, double mean, double std, double k, rv_close_rule close,
                        rv_trades** out) {
    RV_REQUIRE(spread && out);
    return guarded([&] { *out = new rv_trades{revert::dm_signals(spread->value, mean, std, k, from_c(close))}; });
}

rv_status rv_ou_signals(const rv_series* spread, const rv_ou_params* params, double k, rv_close_rule close,
                        rv_trades** out) {
    RV_REQUIRE(spread && params && out);
    return guarded([&] { *out = new rv_trades{revert::ou_signals(spread->value, from_c(*params), k, from_c(close))}; });
}

rv_status rv_ou_fit_pair(const rv_series* s1, const rv_series* s2, double b_lo, double b_hi, double b_step, double* b,
                         rv_ou_params* params, double* score) {
    RV_REQUIRE(s1 && s2 && b);
    return guarded([&] {
        const auto fit = revert::ou_fit_pair(s1->value, s2->value, revert::BGrid{b_lo, b_hi, b_step});
        *b = fit.b;
        if (params) *params = to_c(fit.fit.params);
        if (score) *score = fit.fit.avg_log_likelihood;
    });
}

/* backtest */

rv_backtest_config rv_backtest_config_default(void) {
    const revert::BacktestConfig d;
    return {d.initial_wealth, RV_SIZING_GROSS_EXPOSURE, d.transaction_cost, d.interest_rate};
}

rv_status rv_run_backtest(const rv_series* spread, const rv_panel* legs, const double* coefficients,
                          size_t coefficient_count, const rv_trades* trades, const rv_backtest_config* config,
                          rv_report** out) {
    RV_REQUIRE(spread && trades && config && out);
    RV_REQUIRE(!legs || coefficients || coefficient_count == 0);
    return guarded([&] {
        revert::BacktestConfig c;
        c.initial_wealth = config->initial_wealth;
        c.sizing = config->sizing == RV_SIZING_LONG_LEG ? revert::Sizing::LongLeg : revert::Sizing::GrossExposure;
        c.transaction_cost = config->transaction_cost;
        c.interest_rate = config->interest_rate;
        revert::Legs l;
        if (legs) {
            l.panel = &legs->value;
            l.coefficients = std::span<const double>(coefficients, coefficient_count);
        }
        auto rep = std::make_unique<rv_report>();
        rep->value = revert::run_backtest(spread->value, l, trades->value, c);
        rep->wealth.value = rep->value.wealth;
        *out = rep.release();
    });
}

void rv_report_destroy(rv_report* report) { delete report; }
const rv_series* rv_report_wealth(const rv_report* report) { return report ? &report->wealth : nullptr; }

void rv_report_metrics(const rv_report* report, rv_metrics* out) {
    if (report && out) to_c(report->value.metrics, out);
}

rv_status rv_compute_metrics(const rv_series* wealth, rv_metrics* out) {
    RV_REQUIRE(wealth && out);
    return guarded([&] { to_c(revert::compute_metrics(wealth->value), out); });
}

}  // extern "C"
