#include "revert/spread_search.hpp"

#include <cmath>
#include <limits>

#include "revert/error.hpp"
#include "revert/stats.hpp"

namespace revert {

namespace {

double l1(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += std::abs(x);
    return s;
}

struct Best {
    bool found = false;
    double emrt = 0.0;
    std::vector<double> coefficients;
    Series spread;

    void offer(double e, const std::vector<double>& coeffs, Series&& s) {
        if (!found || better_candidate(e, coeffs, emrt, coefficients)) {
            found = true;
            emrt = e;
            coefficients = coeffs;
            spread = std::move(s);
        }
    }
};

}  // namespace

void SearchConfig::validate() const {
    if (!(grid_min < grid_max)) throw Error(Errc::InvalidArgument, "grid_min must be below grid_max");
    if (!(grid_step > 0.0)) throw Error(Errc::InvalidArgument, "grid_step must be positive");
    if (!(c_threshold > 0.0)) throw Error(Errc::InvalidArgument, "c_threshold must be positive");
    if (!(min_spread_std > 0.0)) throw Error(Errc::InvalidArgument, "min_spread_std must be positive");
    if (variance_cap && !(*variance_cap > 0.0)) throw Error(Errc::InvalidArgument, "variance cap must be positive");
}

std::size_t SearchConfig::grid_points() const {
    return static_cast<std::size_t>(std::floor((grid_max - grid_min) / grid_step + 1e-9)) + 1;
}

double SearchConfig::grid_value(std::size_t k) const {
    // Steps like 0.01 are built as integer / 100 so grid points print as typed.
    const double per_unit = std::round(1.0 / grid_step);
    double v;
    if (per_unit >= 1.0 && std::abs(per_unit * grid_step - 1.0) < 1e-12 &&
        std::abs(grid_min * per_unit - std::round(grid_min * per_unit)) < 1e-6)
        v = (std::round(grid_min * per_unit) + static_cast<double>(k)) / per_unit;
    else
        v = grid_min + static_cast<double>(k) * grid_step;
    return std::abs(v) < grid_step * 1e-9 ? 0.0 : v;
}

bool better_candidate(double emrt_a, const std::vector<double>& a, double emrt_b, const std::vector<double>& b) {
    if (emrt_a != emrt_b) return emrt_a < emrt_b;
    const double na = l1(a), nb = l1(b);
    if (na != nb) return na < nb;
    return a < b;
}

CandidateScore score_candidate(const PricePanel& panel, const std::vector<double>& coefficients,
                               const SearchConfig& config) {
    CandidateScore out;
    out.spread = combine(panel, coefficients);
    const double var = stats::sample_variance(out.spread.view());
    if (std::sqrt(var) < config.min_spread_std) return out;
    if (config.variance_cap && var >= *config.variance_cap) return out;
    try {
        out.emrt = compute_emrt(out.spread, EmrtConfig{config.c_threshold, std::nullopt, ExtremeMode::Both});
    } catch (const Error& e) {
        switch (e.code()) {
            case Errc::DegenerateSeries:
            case Errc::NoExtremes:
            case Errc::NoCompletePairs: break;
            default: throw;
        }
    }
    return out;
}

SearchResult search_coefficients(const PricePanel& panel, const SearchConfig& config) {
    config.validate();
    const std::size_t n = panel.assets();
    if (n == 0) throw Error(Errc::InvalidArgument, "panel has no assets");
    if (panel.rows() < 3) throw Error(Errc::DegenerateSeries, "spread search needs at least 3 rows");

    const std::size_t points = config.grid_points();
    const std::size_t free = n - 1;
    long double cardinality = 1.0L;
    for (std::size_t i = 0; i < free; ++i) cardinality *= static_cast<long double>(points);

    SearchResult result;
    Best best;
    std::vector<double> coeffs(n, 0.0);
    coeffs[0] = 1.0;

    auto evaluate = [&](const std::vector<double>& c) {
        CandidateScore sc = score_candidate(panel, c, config);
        ++result.evaluated;
        if (sc.emrt) best.offer(*sc.emrt, c, std::move(sc.spread));
        else ++result.skipped;
    };

    if (cardinality <= static_cast<long double>(config.max_evaluations)) {
        std::vector<std::size_t> idx(free, 0);
        for (;;) {
            for (std::size_t i = 0; i < free; ++i) coeffs[i + 1] = config.grid_value(idx[i]);
            evaluate(coeffs);
            std::size_t d = 0;
            while (d < free && ++idx[d] == points) idx[d++] = 0;
            if (d == free) break;
        }
    } else if (!config.refine_when_over_budget) {
        throw Error(Errc::GridTooLarge, "grid has more candidates than the evaluation budget allows");
    } else {
        result.exhaustive = false;
        // Start from the grid point nearest zero on every free coordinate.
        std::size_t zero_k = 0;
        for (std::size_t k = 1; k < points; ++k)
            if (std::abs(config.grid_value(k)) < std::abs(config.grid_value(zero_k))) zero_k = k;
        for (std::size_t i = 1; i < n; ++i) coeffs[i] = config.grid_value(zero_k);
        evaluate(coeffs);

        bool changed = true;
        while (changed && result.evaluated < config.max_evaluations) {
            changed = false;
            for (std::size_t i = 1; i < n && result.evaluated < config.max_evaluations; ++i) {
                std::vector<double> trial = best.found ? best.coefficients : coeffs;
                const double before = trial[i];
                for (std::size_t k = 0; k < points && result.evaluated < config.max_evaluations; ++k) {
                    trial[i] = config.grid_value(k);
                    evaluate(trial);
                }
                if (best.found && best.coefficients[i] != before) changed = true;
            }
        }
    }

    if (!best.found) throw Error(Errc::NoFeasibleCandidate, "every grid candidate was skipped");
    result.coefficients = std::move(best.coefficients);
    result.emrt = best.emrt;
    result.spread = std::move(best.spread);
    return result;
}

}  // namespace revert
