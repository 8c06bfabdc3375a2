#pragma once

// Thin C++ conveniences over the C API: owning handles and status checks.

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "revert/revert.h"

namespace cli {

// A failed library call, or a CLI-level failure mapped onto a library status.
struct Failure : std::runtime_error {
    Failure(rv_status s, const std::string& msg, std::size_t line = 0, std::string file = {})
        : std::runtime_error(msg), status(s), line(line), file(std::move(file)) {}
    rv_status status;
    std::size_t line;
    std::string file;
};

// Configuration problems that never reach the library.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void check(rv_status s, const std::string& file = {}) {
    if (s != RV_OK) throw Failure(s, rv_last_error_message(), rv_last_error_line(), file);
}

template <class T, void (*Destroy)(T*)>
struct Deleter {
    void operator()(T* p) const { Destroy(p); }
};

using Series = std::unique_ptr<rv_series, Deleter<rv_series, rv_series_destroy>>;
using Panel = std::unique_ptr<rv_panel, Deleter<rv_panel, rv_panel_destroy>>;
using Trades = std::unique_ptr<rv_trades, Deleter<rv_trades, rv_trades_destroy>>;
using QTable = std::unique_ptr<rv_qtable, Deleter<rv_qtable, rv_qtable_destroy>>;
using Report = std::unique_ptr<rv_report, Deleter<rv_report, rv_report_destroy>>;
using SearchResult = std::unique_ptr<rv_search_result, Deleter<rv_search_result, rv_search_result_destroy>>;

inline std::vector<double> values(const rv_series* s) {
    const double* v = rv_series_values(s);
    return {v, v + rv_series_length(s)};
}

inline Series make_series(const std::vector<double>& v) {
    rv_series* s = nullptr;
    check(rv_series_create(v.data(), v.size(), &s));
    return Series(s);
}

inline std::string iso(int32_t days) {
    char buf[16];
    check(rv_format_date(days, buf, sizeof buf));
    return buf;
}

}  // namespace cli
