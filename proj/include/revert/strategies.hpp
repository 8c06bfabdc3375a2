#pragma once

#include <string>
#include <vector>

#include "revert/marketdata.hpp"
#include "revert/ou.hpp"
#include "revert/trades.hpp"

namespace revert {

struct PairScore {
    std::size_t first = 0;  // column indices into the panel, first < second
    std::size_t second = 0;
    std::string first_ticker;
    std::string second_ticker;
    double ssd = 0.0;
};

/// Every unordered pair ranked by the sum of squared deviations of their
/// first-day-normalized prices, ascending; ties by ticker names.
std::vector<PairScore> ssd_rank(const PricePanel& panel);

enum class CloseRule {
    Band,  // exit long once X - center > width
    Mean,  // exit long once X >= center
};

struct BandRule {
    double center = 0.0;
    double width = 0.0;
    double k = 1.0;
    CloseRule close = CloseRule::Band;
};

/// Long-only band scan: buy from flat when X - center < -width, sell from long
/// per the close rule, force-close an open long at the last sample.
TradeList band_signals(const Series& spread, const BandRule& rule, const std::string& source);

/// Distance method; mean and std come from the formation window.
TradeList dm_signals(const Series& spread, double mean, double std, double k = 1.0,
                     CloseRule close = CloseRule::Band);

/// OU method with bands theta +/- k * sigma_eq.
TradeList ou_signals(const Series& spread, const OUParams& params, double k = 0.5,
                     CloseRule close = CloseRule::Band);

struct BGrid {
    double lo = 0.01;
    double hi = 3.0;
    double step = 0.01;
};

struct PairFit {
    double b = 0.0;
    OUFit fit;
    std::size_t feasible = 0;
};

/// Hedge ratio B maximizing the average OU log-likelihood of s1 - B * s2
/// (dt = 1 trading day). Scores within a relative 1e-9 count as ties and
/// resolve to the smaller B.
PairFit ou_fit_pair(const Series& s1, const Series& s2, const BGrid& grid = {});

}  // namespace revert
