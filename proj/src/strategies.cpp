#include "revert/strategies.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

#include "revert/error.hpp"

namespace revert {

std::vector<PairScore> ssd_rank(const PricePanel& panel) {
    if (panel.assets() < 2) throw Error(Errc::InvalidArgument, "ssd_rank needs at least two assets");
    std::vector<Series> norm;
    for (std::size_t c = 0; c < panel.assets(); ++c) norm.push_back(normalize_first(panel.column(c)));

    std::vector<PairScore> out;
    for (std::size_t i = 0; i < panel.assets(); ++i)
        for (std::size_t j = i + 1; j < panel.assets(); ++j) {
            double ssd = 0.0;
            for (std::size_t r = 0; r < panel.rows(); ++r) {
                const double d = norm[i][r] - norm[j][r];
                ssd += d * d;
            }
            out.push_back({i, j, panel.tickers()[i], panel.tickers()[j], ssd});
        }
    std::stable_sort(out.begin(), out.end(), [](const PairScore& a, const PairScore& b) {
        return std::tie(a.ssd, a.first_ticker, a.second_ticker) < std::tie(b.ssd, b.first_ticker, b.second_ticker);
    });
    return out;
}

TradeList band_signals(const Series& spread, const BandRule& rule, const std::string& source) {
    TradeList out;
    out.source = source;
    bool long_now = false;
    for (std::size_t t = 0; t < spread.size(); ++t) {
        const double dev = spread[t] - rule.center;
        if (!long_now) {
            if (dev < -rule.width && t + 1 < spread.size()) {
                out.events.push_back({t, 1});
                long_now = true;
            }
        } else {
            const bool exit = rule.close == CloseRule::Band ? dev > rule.width : dev >= 0.0;
            if (exit) {
                out.events.push_back({t, -1});
                long_now = false;
            }
        }
    }
    if (long_now) out.events.push_back({spread.size() - 1, -1});
    return out;
}

TradeList dm_signals(const Series& spread, double mean, double std, double k, CloseRule close) {
    if (!(std > 0.0) || !std::isfinite(std)) throw Error(Errc::DegenerateStd, "distance-method std must be positive");
    if (!(k >= 0.0)) throw Error(Errc::InvalidArgument, "band multiplier must be non-negative");
    return band_signals(spread, BandRule{mean, k * std, k, close}, "dm");
}

TradeList ou_signals(const Series& spread, const OUParams& params, double k, CloseRule close) {
    if (!(params.mu > 0.0)) throw Error(Errc::InvalidParams, "OU signals need mu > 0");
    if (!(k >= 0.0)) throw Error(Errc::InvalidArgument, "band multiplier must be non-negative");
    return band_signals(spread, BandRule{params.theta, k * sigma_eq(params), k, close}, "ou");
}

PairFit ou_fit_pair(const Series& s1, const Series& s2, const BGrid& grid) {
    if (s1.size() != s2.size()) throw Error(Errc::DimensionMismatch, "pair series must be aligned");
    if (s1.size() < 10) throw Error(Errc::DegenerateSeries, "pair fit needs at least 10 samples");
    if (!(grid.lo <= grid.hi) || !(grid.step > 0.0)) throw Error(Errc::InvalidArgument, "bad B grid");

    const auto points = static_cast<std::size_t>(std::floor((grid.hi - grid.lo) / grid.step + 1e-9)) + 1;
    PairFit best;
    bool found = false;
    Series spread;
    spread.values.resize(s1.size());
    for (std::size_t k = 0; k < points; ++k) {
        const double b = grid.lo + static_cast<double>(k) * grid.step;
        for (std::size_t t = 0; t < s1.size(); ++t) spread.values[t] = s1[t] - b * s2[t];
        OUFit fit;
        try {
            fit = fit_ou_mle(spread, 1.0);
        } catch (const Error& e) {
            if (e.code() == Errc::DegenerateSeries || e.code() == Errc::NonMeanReverting) continue;
            throw;
        }
        ++best.feasible;
        const double score = fit.avg_log_likelihood;
        const double tol = 1e-9 * std::max(1.0, std::abs(best.fit.avg_log_likelihood));
        if (!found || (std::isinf(score) && !std::isinf(best.fit.avg_log_likelihood)) ||
            score > best.fit.avg_log_likelihood + tol) {
            found = true;
            const std::size_t feasible = best.feasible;
            best = PairFit{b, fit, feasible};
        }
    }
    if (!found) throw Error(Errc::NoFeasibleB, "no B on the grid gives a mean-reverting spread");
    return best;
}

}  // namespace revert
