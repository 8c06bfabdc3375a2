#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace revert {

/// Calendar date stored as days since 1970-01-01.
struct Date {
    std::int32_t days = 0;

    static Date parse_iso(std::string_view text);  // throws Errc::InvalidArgument
    static std::optional<Date> try_parse_iso(std::string_view text);
    std::string iso() const;

    friend auto operator<=>(const Date&, const Date&) = default;
};

/// Ordered real values, optionally dated. After alignment time is carried as
/// the position in `values` (trading-day index).
struct Series {
    std::vector<double> values;
    std::vector<Date> dates;  // empty, or same length as values
    std::string origin;

    Series() = default;
    explicit Series(std::vector<double> v, std::string label = {})
        : values(std::move(v)), origin(std::move(label)) {}

    std::size_t size() const noexcept { return values.size(); }
    bool empty() const noexcept { return values.empty(); }
    bool dated() const noexcept { return !dates.empty(); }
    double operator[](std::size_t i) const { return values[i]; }
    std::span<const double> view() const noexcept { return values; }
};

/// Date-aligned price matrix, row = date, column = asset.
class PricePanel {
public:
    PricePanel() = default;
    PricePanel(std::vector<Date> dates, std::vector<std::string> tickers, std::vector<double> prices,
               std::vector<std::size_t> dropped = {});

    std::size_t rows() const noexcept { return dates_.size(); }
    std::size_t assets() const noexcept { return tickers_.size(); }

    const std::vector<Date>& dates() const noexcept { return dates_; }
    const std::vector<std::string>& tickers() const noexcept { return tickers_; }
    double price(std::size_t row, std::size_t col) const { return prices_[row * assets() + col]; }

    /// Dates of each ticker's input that did not survive the inner join.
    const std::vector<std::size_t>& dropped() const noexcept { return dropped_; }

    Series column(std::size_t col) const;
    PricePanel slice_rows(std::size_t begin, std::size_t end) const;
    PricePanel select(std::span<const std::size_t> cols) const;

    /// First row whose date is >= `date`; rows() if none.
    std::size_t lower_bound(Date date) const;

private:
    std::vector<Date> dates_;
    std::vector<std::string> tickers_;
    std::vector<double> prices_;
    std::vector<std::size_t> dropped_;
};

struct TickerSeries {
    std::string ticker;
    Series series;  // must be dated
};

/// Reads a `date,close` CSV. Rows must be ISO dates with strictly positive
/// closes; output is sorted ascending by date.
Series load_price_csv(const std::filesystem::path& path, const std::string& ticker);

/// Inner join on dates.
PricePanel align(std::span<const TickerSeries> inputs);

/// x[i] / x[0].
Series normalize_first(const Series& series);

/// Pointwise sum of coefficients[j] * asset j.
Series combine(const PricePanel& panel, std::span<const double> coefficients);

}  // namespace revert
