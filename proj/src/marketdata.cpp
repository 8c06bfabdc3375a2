#include "revert/marketdata.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>

#include "revert/error.hpp"

namespace revert {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::optional<double> parse_real(std::string_view s) {
    s = trim(s);
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

}  // namespace

std::optional<Date> Date::try_parse_iso(std::string_view text) {
    text = trim(text);
    if (text.size() != 10 || text[4] != '-' || text[7] != '-') return std::nullopt;
    int y = 0;
    unsigned m = 0, d = 0;
    auto num = [](std::string_view part, auto& out) {
        auto [p, ec] = std::from_chars(part.data(), part.data() + part.size(), out);
        return ec == std::errc{} && p == part.data() + part.size();
    };
    if (!num(text.substr(0, 4), y) || !num(text.substr(5, 2), m) || !num(text.substr(8, 2), d)) return std::nullopt;
    const std::chrono::year_month_day ymd{std::chrono::year{y}, std::chrono::month{m}, std::chrono::day{d}};
    if (!ymd.ok()) return std::nullopt;
    return Date{static_cast<std::int32_t>(std::chrono::sys_days{ymd}.time_since_epoch().count())};
}

Date Date::parse_iso(std::string_view text) {
    if (auto d = try_parse_iso(text)) return *d;
    throw Error(Errc::InvalidArgument, "not an ISO-8601 date: '" + std::string(text) + "'");
}

std::string Date::iso() const {
    const std::chrono::year_month_day ymd{std::chrono::sys_days{std::chrono::days{days}}};
    char buf[16];
    std::snprintf(buf, sizeof buf, "%04d-%02u-%02u", static_cast<int>(ymd.year()),
                  static_cast<unsigned>(ymd.month()), static_cast<unsigned>(ymd.day()));
    return buf;
}

PricePanel::PricePanel(std::vector<Date> dates, std::vector<std::string> tickers, std::vector<double> prices,
                       std::vector<std::size_t> dropped)
    : dates_(std::move(dates)), tickers_(std::move(tickers)), prices_(std::move(prices)), dropped_(std::move(dropped)) {
    if (prices_.size() != dates_.size() * tickers_.size())
        throw Error(Errc::DimensionMismatch, "price matrix size does not match dates x tickers");
    if (dropped_.empty()) dropped_.assign(tickers_.size(), 0);
    for (std::size_t i = 1; i < dates_.size(); ++i)
        if (!(dates_[i - 1] < dates_[i])) throw Error(Errc::InvalidArgument, "panel dates must be strictly increasing");
    for (std::size_t i = 0; i < prices_.size(); ++i)
        if (!(prices_[i] > 0.0)) throw Error(Errc::NonPositivePrice, "panel prices must be strictly positive");
}

Series PricePanel::column(std::size_t col) const {
    if (col >= assets()) throw Error(Errc::DimensionMismatch, "column index out of range");
    Series s;
    s.values.reserve(rows());
    for (std::size_t r = 0; r < rows(); ++r) s.values.push_back(price(r, col));
    s.dates = dates_;
    s.origin = tickers_[col];
    return s;
}

PricePanel PricePanel::slice_rows(std::size_t begin, std::size_t end) const {
    if (begin > end || end > rows()) throw Error(Errc::InvalidArgument, "row slice out of range");
    std::vector<Date> d(dates_.begin() + static_cast<std::ptrdiff_t>(begin), dates_.begin() + static_cast<std::ptrdiff_t>(end));
    std::vector<double> p(prices_.begin() + static_cast<std::ptrdiff_t>(begin * assets()),
                          prices_.begin() + static_cast<std::ptrdiff_t>(end * assets()));
    return PricePanel(std::move(d), tickers_, std::move(p), dropped_);
}

PricePanel PricePanel::select(std::span<const std::size_t> cols) const {
    std::vector<std::string> t;
    std::vector<std::size_t> drop;
    for (std::size_t c : cols) {
        if (c >= assets()) throw Error(Errc::DimensionMismatch, "column index out of range");
        t.push_back(tickers_[c]);
        drop.push_back(dropped_[c]);
    }
    std::vector<double> p;
    p.reserve(rows() * cols.size());
    for (std::size_t r = 0; r < rows(); ++r)
        for (std::size_t c : cols) p.push_back(price(r, c));
    return PricePanel(dates_, std::move(t), std::move(p), std::move(drop));
}

std::size_t PricePanel::lower_bound(Date date) const {
    return static_cast<std::size_t>(std::lower_bound(dates_.begin(), dates_.end(), date) - dates_.begin());
}

Series load_price_csv(const std::filesystem::path& path, const std::string& ticker) {
    std::ifstream in(path);
    if (!in) throw Error(Errc::MissingFile, "cannot open price file " + path.string());

    std::string line;
    std::size_t line_no = 0;
    bool header_seen = false;
    struct Row {
        Date date;
        double close;
        std::size_t line;
    };
    std::vector<Row> rows;
    while (std::getline(in, line)) {
        ++line_no;
        std::string_view view = trim(line);
        if (line_no == 1 && view.size() >= 3 && static_cast<unsigned char>(view[0]) == 0xEF) view.remove_prefix(3);  // BOM
        if (view.empty()) continue;
        if (!header_seen) {
            if (view != "date,close")
                throw Error(Errc::MalformedRow, path.string() + ": expected header 'date,close'", line_no);
            header_seen = true;
            continue;
        }
        const auto comma = view.find(',');
        if (comma == std::string_view::npos || view.find(',', comma + 1) != std::string_view::npos)
            throw Error(Errc::MalformedRow, path.string() + ": expected two fields", line_no);
        const auto date = Date::try_parse_iso(view.substr(0, comma));
        const auto close = parse_real(view.substr(comma + 1));
        if (!date || !close) throw Error(Errc::MalformedRow, path.string() + ": unparseable row", line_no);
        if (!(*close > 0.0) || !std::isfinite(*close))
            throw Error(Errc::NonPositivePrice, path.string() + ": close must be positive", line_no);
        rows.push_back({*date, *close, line_no});
    }
    if (!header_seen) throw Error(Errc::EmptySeries, path.string() + ": no header");
    if (rows.empty()) throw Error(Errc::EmptySeries, path.string() + ": no data rows");

    std::stable_sort(rows.begin(), rows.end(), [](const Row& a, const Row& b) { return a.date < b.date; });
    for (std::size_t i = 1; i < rows.size(); ++i)
        if (rows[i].date == rows[i - 1].date)
            throw Error(Errc::MalformedRow, path.string() + ": duplicate date " + rows[i].date.iso(),
                        std::max(rows[i].line, rows[i - 1].line));

    Series s;
    s.origin = ticker;
    s.values.reserve(rows.size());
    s.dates.reserve(rows.size());
    for (const Row& r : rows) {
        s.dates.push_back(r.date);
        s.values.push_back(r.close);
    }
    return s;
}

PricePanel align(std::span<const TickerSeries> inputs) {
    if (inputs.empty()) throw Error(Errc::InvalidArgument, "align needs at least one series");
    for (const auto& in : inputs)
        if (in.series.dates.size() != in.series.values.size())
            throw Error(Errc::InvalidArgument, "series '" + in.ticker + "' is not dated");

    std::set<Date> common(inputs[0].series.dates.begin(), inputs[0].series.dates.end());
    for (std::size_t k = 1; k < inputs.size(); ++k) {
        std::set<Date> next;
        for (const Date& d : inputs[k].series.dates)
            if (common.count(d)) next.insert(d);
        common.swap(next);
    }
    if (common.empty()) throw Error(Errc::EmptyIntersection, "no dates common to all series");

    std::vector<Date> dates(common.begin(), common.end());
    std::vector<std::string> tickers;
    std::vector<std::size_t> dropped;
    std::vector<double> prices(dates.size() * inputs.size());
    for (std::size_t k = 0; k < inputs.size(); ++k) {
        const auto& s = inputs[k].series;
        tickers.push_back(inputs[k].ticker);
        std::map<Date, double> by_date;
        for (std::size_t i = 0; i < s.size(); ++i) by_date[s.dates[i]] = s.values[i];
        for (std::size_t r = 0; r < dates.size(); ++r) prices[r * inputs.size() + k] = by_date.at(dates[r]);
        dropped.push_back(s.size() - dates.size());
    }
    return PricePanel(std::move(dates), std::move(tickers), std::move(prices), std::move(dropped));
}

Series normalize_first(const Series& series) {
    if (series.empty()) throw Error(Errc::EmptySeries, "cannot normalize an empty series");
    const double first = series.values.front();
    if (!(first > 0.0)) throw Error(Errc::NonPositivePrice, "first value must be positive to normalize");
    Series out = series;
    for (double& v : out.values) v /= first;
    out.values.front() = 1.0;
    return out;
}

Series combine(const PricePanel& panel, std::span<const double> coefficients) {
    if (coefficients.size() != panel.assets())
        throw Error(Errc::DimensionMismatch, "expected " + std::to_string(panel.assets()) + " coefficients, got " +
                                                 std::to_string(coefficients.size()));
    Series out;
    out.values.resize(panel.rows(), 0.0);
    for (std::size_t r = 0; r < panel.rows(); ++r) {
        double acc = 0.0;
        for (std::size_t c = 0; c < panel.assets(); ++c) acc += coefficients[c] * panel.price(r, c);
        out.values[r] = acc;
    }
    out.dates = panel.dates();
    out.origin = "spread";
    return out;
}

}  // namespace revert
