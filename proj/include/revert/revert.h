/*
 * revert: mean-reversion spread construction, Q-learning trading and
 * benchmark backtests behind a plain C ABI.
 *
 * Conventions
 *   - Every fallible call returns rv_status; RV_OK is 0. On failure the
 *     calling thread's last error (rv_last_error_message / _line) is set.
 *   - Objects are opaque handles created by rv_*_create/load/... and released
 *     with the matching rv_*_destroy. Destroy functions accept NULL.
 *   - Handles returned through `const` accessors are borrowed and live as long
 *     as their owner.
 *   - Variable-length outputs use the two-call pattern: pass buffer = NULL to
 *     learn the count, then call again with capacity >= count.
 */
#ifndef REVERT_REVERT_H
#define REVERT_REVERT_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(REVERT_BUILDING_LIBRARY)
#    define REVERT_API __declspec(dllexport)
#  else
#    define REVERT_API __declspec(dllimport)
#  endif
#else
#  define REVERT_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum rv_status {
    RV_OK = 0,
    RV_ERR_INVALID_ARGUMENT,
    RV_ERR_MISSING_FILE,
    RV_ERR_MALFORMED_ROW,
    RV_ERR_NON_POSITIVE_PRICE,
    RV_ERR_EMPTY_SERIES,
    RV_ERR_EMPTY_INTERSECTION,
    RV_ERR_DIMENSION_MISMATCH,
    RV_ERR_INVALID_PARAMS,
    RV_ERR_DEGENERATE_SERIES,
    RV_ERR_NON_MEAN_REVERTING,
    RV_ERR_NO_EXTREMES,
    RV_ERR_NO_COMPLETE_PAIRS,
    RV_ERR_NO_FEASIBLE_CANDIDATE,
    RV_ERR_GRID_TOO_LARGE,
    RV_ERR_WINDOW_TOO_SHORT,
    RV_ERR_ZERO_REFERENCE_PRICE,
    RV_ERR_ILLEGAL_ACTION,
    RV_ERR_NO_FEASIBLE_B,
    RV_ERR_DEGENERATE_STD,
    RV_ERR_OUT_OF_BOUNDS_TRADE,
    RV_ERR_NON_POSITIVE_BASIS,
    RV_ERR_DEGENERATE_WEALTH,
    RV_ERR_IO,
    RV_ERR_BUFFER_TOO_SMALL,
    RV_ERR_INTERNAL
} rv_status;

/* Stable identifier such as "NonPositivePrice". */
REVERT_API const char* rv_status_name(rv_status status);
REVERT_API const char* rv_last_error_message(void);
/* 1-based CSV line of the last error, 0 when not applicable. */
REVERT_API size_t rv_last_error_line(void);
REVERT_API const char* rv_version(void);

REVERT_API uint64_t rv_derive_seed(uint64_t master, const char* stream);

/* ---- series / market data ------------------------------------------------ */

typedef struct rv_series rv_series;
typedef struct rv_panel rv_panel;

REVERT_API rv_status rv_series_create(const double* values, size_t count, rv_series** out);
REVERT_API void rv_series_destroy(rv_series* series);
REVERT_API size_t rv_series_length(const rv_series* series);
REVERT_API const double* rv_series_values(const rv_series* series);
/* Days since 1970-01-01 per sample, or NULL for an undated series. */
REVERT_API const int32_t* rv_series_dates(const rv_series* series);
/* Writes "YYYY-MM-DD" plus NUL into out (capacity >= 11). */
REVERT_API rv_status rv_format_date(int32_t days, char* out, size_t capacity);
REVERT_API rv_status rv_parse_date(const char* iso, int32_t* days);

REVERT_API rv_status rv_load_price_csv(const char* path, const char* ticker, rv_series** out);
REVERT_API rv_status rv_normalize_first(const rv_series* series, rv_series** out);

REVERT_API rv_status rv_panel_align(const rv_series* const* series, const char* const* tickers, size_t count,
                                    rv_panel** out);
REVERT_API void rv_panel_destroy(rv_panel* panel);
REVERT_API size_t rv_panel_rows(const rv_panel* panel);
REVERT_API size_t rv_panel_assets(const rv_panel* panel);
REVERT_API const char* rv_panel_ticker(const rv_panel* panel, size_t asset);
REVERT_API double rv_panel_price(const rv_panel* panel, size_t row, size_t asset);
REVERT_API int32_t rv_panel_date(const rv_panel* panel, size_t row);
/* Input dates of this asset dropped by the inner join. */
REVERT_API size_t rv_panel_dropped(const rv_panel* panel, size_t asset);
REVERT_API rv_status rv_panel_column(const rv_panel* panel, size_t asset, rv_series** out);
REVERT_API rv_status rv_panel_slice(const rv_panel* panel, size_t begin_row, size_t end_row, rv_panel** out);
REVERT_API rv_status rv_panel_select(const rv_panel* panel, const size_t* assets, size_t count, rv_panel** out);
/* First row dated on or after `days`; rows() if none. */
REVERT_API size_t rv_panel_lower_bound(const rv_panel* panel, int32_t days);
REVERT_API rv_status rv_combine(const rv_panel* panel, const double* coefficients, size_t count, rv_series** out);

/* ---- Ornstein-Uhlenbeck ---------------------------------------------------- */

typedef struct rv_ou_params {
    double mu;
    double theta;
    double sigma;
} rv_ou_params;

typedef struct rv_sim_config {
    rv_ou_params params;
    double x0;
    double horizon;
    size_t n_steps;
    uint64_t seed;
} rv_sim_config;

REVERT_API rv_status rv_simulate_ou(const rv_sim_config* config, rv_series** out);
/* avg_log_likelihood may be NULL. */
REVERT_API rv_status rv_fit_ou_mle(const rv_series* series, double dt, rv_ou_params* out,
                                   double* avg_log_likelihood);
REVERT_API rv_status rv_sigma_eq(const rv_ou_params* params, double* out);

/* ---- empirical mean reversion time ----------------------------------------- */

typedef enum rv_extreme_mode { RV_EXTREMES_BOTH = 0, RV_EXTREMES_MAXIMA = 1 } rv_extreme_mode;

typedef struct rv_emrt_config {
    double c_threshold;
    int use_reference_mean; /* 0: sample mean of the series */
    double reference_mean;
    rv_extreme_mode extremes;
} rv_emrt_config;

typedef struct rv_extreme {
    size_t index;
    int kind; /* -1 minimum, +1 maximum */
    double value;
} rv_extreme;

typedef struct rv_tau {
    size_t index;
    int is_crossing; /* 0 extreme, 1 mean crossing */
} rv_tau;

REVERT_API rv_emrt_config rv_emrt_config_default(void);
REVERT_API rv_status rv_find_important_extremes(const rv_series* series, double c, rv_extreme* buffer,
                                                size_t capacity, size_t* count);
REVERT_API rv_status rv_build_tau_sequence(const rv_series* series, const rv_emrt_config* config, rv_tau* buffer,
                                           size_t capacity, size_t* count, double* reference_mean);
REVERT_API rv_status rv_compute_emrt(const rv_series* series, const rv_emrt_config* config, double* out);

/* ---- spread search ----------------------------------------------------------- */

typedef struct rv_search_config {
    double grid_min;
    double grid_max;
    double grid_step;
    double c_threshold;
    int has_variance_cap;
    double variance_cap;
    double min_spread_std;
    uint64_t max_evaluations;
    int refine_when_over_budget;
} rv_search_config;

typedef struct rv_search_result rv_search_result;

REVERT_API rv_search_config rv_search_config_default(void);
REVERT_API rv_status rv_search_coefficients(const rv_panel* panel, const rv_search_config* config,
                                            rv_search_result** out);
REVERT_API void rv_search_result_destroy(rv_search_result* result);
REVERT_API size_t rv_search_result_coefficients(const rv_search_result* result, double* buffer, size_t capacity);
REVERT_API double rv_search_result_emrt(const rv_search_result* result);
REVERT_API size_t rv_search_result_evaluated(const rv_search_result* result);
REVERT_API size_t rv_search_result_skipped(const rv_search_result* result);
REVERT_API int rv_search_result_exhaustive(const rv_search_result* result);
REVERT_API const rv_series* rv_search_result_spread(const rv_search_result* result);

/* ---- trade lists -------------------------------------------------------------- */

typedef struct rv_trades rv_trades;

REVERT_API rv_status rv_trades_create(const size_t* times, const int* actions, size_t count, const char* source,
                                      rv_trades** out);
REVERT_API void rv_trades_destroy(rv_trades* trades);
REVERT_API size_t rv_trades_count(const rv_trades* trades);
REVERT_API rv_status rv_trades_get(const rv_trades* trades, size_t i, size_t* time, int* action);
REVERT_API const char* rv_trades_source(const rv_trades* trades);
/* Alternation / no-short / increasing-time violations; 0 for a legal list. */
REVERT_API size_t rv_trades_violations(const rv_trades* trades);

/* ---- Q-learning agent ----------------------------------------------------------- */

typedef enum rv_encoding { RV_ENCODING_PCT = 0, RV_ENCODING_NORM_DIFF = 1 } rv_encoding;
typedef enum rv_position { RV_FLAT = 0, RV_LONG = 1 } rv_position;

typedef struct rv_rl_config {
    size_t lookback;
    double move_threshold;
    double learning_rate;
    double discount;
    double epsilon;
    size_t episodes;
    double transaction_cost;
    double interest_rate;
    uint64_t seed;
    rv_encoding encoding;
    double encoding_scale; /* norm-diff unit; <= 0 uses the walked series' std */
} rv_rl_config;

typedef struct rv_range {
    double lo;
    double hi;
} rv_range;

typedef struct rv_env_config {
    rv_range mu;
    rv_range theta;
    rv_range sigma;
    double horizon;
    size_t n_steps;
    size_t paths;
    int has_x0; /* 0: each path starts at its theta */
    double x0;
    uint64_t seed;
} rv_env_config;

typedef struct rv_qtable rv_qtable;

REVERT_API rv_rl_config rv_rl_config_default(void);
REVERT_API rv_env_config rv_env_config_default(void);

REVERT_API rv_status rv_qtable_create(size_t lookback, rv_qtable** out);
REVERT_API void rv_qtable_destroy(rv_qtable* table);
REVERT_API size_t rv_qtable_lookback(const rv_qtable* table);
REVERT_API size_t rv_qtable_states(const rv_qtable* table);
REVERT_API rv_status rv_qtable_value(const rv_qtable* table, size_t state, int action, double* out);
REVERT_API rv_status rv_qtable_set_value(rv_qtable* table, size_t state, int action, double value);
REVERT_API rv_status rv_qtable_visits(const rv_qtable* table, size_t state, int action, uint64_t* out);

REVERT_API rv_status rv_encode_state(const double* window, size_t length, double k, rv_position position,
                                     rv_encoding encoding, double scale, size_t* state);
/* Fills up to 2 legal actions for the position; returns the count. */
REVERT_API size_t rv_legal_actions(rv_position position, int* actions);
REVERT_API double rv_reward(int action, double x, double theta, double cost);
REVERT_API rv_status rv_q_update(rv_qtable* table, size_t state, int action, double reward, size_t next_state,
                                 double alpha, double gamma);
REVERT_API rv_status rv_greedy_action(const rv_qtable* table, size_t state, int* action);

REVERT_API rv_status rv_train(const rv_env_config* env, const rv_rl_config* config, rv_qtable** out);
/* Simulated path i of the environment together with its true mean. */
REVERT_API rv_status rv_env_path(const rv_env_config* env, size_t i, rv_series** out, double* theta);
REVERT_API rv_status rv_evaluate(const rv_qtable* table, const rv_series* spread, const rv_rl_config* config,
                                 rv_trades** out);
/* comment may be NULL; it is written as a leading '#' line of the CSV. */
REVERT_API rv_status rv_qtable_save(const rv_qtable* table, const rv_rl_config* config, const char* csv_path,
                                    const char* json_path, const char* comment);
REVERT_API rv_status rv_qtable_load(const char* csv_path, const char* json_path, rv_qtable** out,
                                    rv_rl_config* config);

/* ---- benchmark strategies --------------------------------------------------------- */

typedef enum rv_close_rule { RV_CLOSE_BAND = 0, RV_CLOSE_MEAN = 1 } rv_close_rule;

typedef struct rv_pair_score {
    size_t first;
    size_t second;
    double ssd;
} rv_pair_score;

REVERT_API rv_status rv_ssd_rank(const rv_panel* panel, rv_pair_score* buffer, size_t capacity, size_t* count);
REVERT_API rv_status rv_dm_signals(const rv_series* spread, double mean, double std, double k, rv_close_rule close,
                                   rv_trades** out);
REVERT_API rv_status rv_ou_signals(const rv_series* spread, const rv_ou_params* params, double k,
                                   rv_close_rule close, rv_trades** out);
REVERT_API rv_status rv_ou_fit_pair(const rv_series* s1, const rv_series* s2, double b_lo, double b_hi,
                                    double b_step, double* b, rv_ou_params* params, double* score);

/* ---- backtest ------------------------------------------------------------------------ */

typedef enum rv_sizing { RV_SIZING_GROSS_EXPOSURE = 0, RV_SIZING_LONG_LEG = 1 } rv_sizing;

typedef struct rv_backtest_config {
    double initial_wealth;
    rv_sizing sizing;
    double transaction_cost;
    double interest_rate;
} rv_backtest_config;

typedef struct rv_metrics {
    double daily_ret_mean; /* % */
    double daily_ret_std;  /* % */
    double daily_sharpe;
    double max_drawdown; /* % */
    double cumul_pnl;    /* % */
} rv_metrics;

typedef struct rv_report rv_report;

REVERT_API rv_backtest_config rv_backtest_config_default(void);
/* legs may be NULL: the spread is then its own entry basis. */
REVERT_API rv_status rv_run_backtest(const rv_series* spread, const rv_panel* legs, const double* coefficients,
                                     size_t coefficient_count, const rv_trades* trades,
                                     const rv_backtest_config* config, rv_report** out);
REVERT_API void rv_report_destroy(rv_report* report);
REVERT_API const rv_series* rv_report_wealth(const rv_report* report);
REVERT_API void rv_report_metrics(const rv_report* report, rv_metrics* out);
REVERT_API rv_status rv_compute_metrics(const rv_series* wealth, rv_metrics* out);

#ifdef __cplusplus
}
#endif

#endif /* REVERT_REVERT_H */
