#include "revert/emrt.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "revert/error.hpp"
#include "revert/stats.hpp"

namespace revert {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

// Flags indices m where y[m] is the minimum of a segment whose two endpoints
// both sit at least `threshold` above it.
//
// For each m the widest admissible segment runs over neighbours >= y[m]; it is
// enough to know the largest value on each side within that domain. A
// non-decreasing stack yields both: the left maximum when m is pushed, the
// right maximum when m is popped by a strictly smaller value (or at the end).
// seg_max of a stack entry holds the maximum of all values strictly between
// it and the entry above it (or the scan position, for the top).
std::vector<bool> scan_minima(std::span<const double> y, double threshold) {
    struct Entry {
        std::size_t index;
        double left_max;
        double seg_max;
    };
    const std::size_t n = y.size();
    std::vector<Entry> stack;
    std::vector<double> left_max(n, kNegInf), right_max(n, kNegInf);
    double prefix_max = kNegInf;

    auto pop_until = [&](double x) {
        double carry = kNegInf;
        while (!stack.empty() && y[stack.back().index] > x) {
            const Entry e = stack.back();
            stack.pop_back();
            right_max[e.index] = std::max(e.seg_max, carry);
            carry = std::max(right_max[e.index], y[e.index]);
        }
        if (!stack.empty()) stack.back().seg_max = std::max(stack.back().seg_max, carry);
    };

    for (std::size_t t = 0; t < n; ++t) {
        const double x = y[t];
        pop_until(x);
        double lm;
        if (stack.empty()) {
            lm = prefix_max;
        } else {
            const Entry& top = stack.back();
            lm = y[top.index] < x ? top.seg_max : std::max({top.left_max, y[top.index], top.seg_max});
        }
        left_max[t] = lm;
        stack.push_back({t, lm, kNegInf});
        prefix_max = std::max(prefix_max, x);
    }
    pop_until(kNegInf);

    std::vector<bool> flags(n, false);
    for (std::size_t m = 0; m < n; ++m)
        flags[m] = left_max[m] - y[m] >= threshold && right_max[m] - y[m] >= threshold;
    return flags;
}

}  // namespace

void EmrtConfig::validate() const {
    if (!(c_threshold > 0.0) || !std::isfinite(c_threshold))
        throw Error(Errc::InvalidArgument, "EMRT threshold C must be positive");
    if (reference_mean && !std::isfinite(*reference_mean))
        throw Error(Errc::InvalidArgument, "reference mean must be finite");
}

std::vector<ExtremePoint> find_important_extremes(const Series& series, double c) {
    if (series.size() < 3) throw Error(Errc::DegenerateSeries, "extreme detection needs at least 3 samples");
    if (!(c > 0.0)) throw Error(Errc::InvalidArgument, "threshold C must be positive");
    const double s = stats::sample_std(series.view());
    if (!(s > 0.0)) throw Error(Errc::DegenerateSeries, "series has zero sample standard deviation");
    const double threshold = c * s;

    const auto minima = scan_minima(series.view(), threshold);
    std::vector<double> negated(series.values);
    for (double& v : negated) v = -v;
    const auto maxima = scan_minima(negated, threshold);

    std::vector<ExtremePoint> out;
    for (std::size_t m = 0; m < series.size(); ++m) {
        if (minima[m]) out.push_back({m, ExtremeKind::Minimum, series[m]});
        else if (maxima[m]) out.push_back({m, ExtremeKind::Maximum, series[m]});
    }
    return out;
}

TauSequence build_tau_sequence(const Series& series, const EmrtConfig& config) {
    config.validate();
    auto extremes = find_important_extremes(series, config.c_threshold);
    if (config.extremes == ExtremeMode::MaximaOnly)
        std::erase_if(extremes, [](const ExtremePoint& p) { return p.kind != ExtremeKind::Maximum; });
    if (extremes.empty()) throw Error(Errc::NoExtremes, "series has no important extremes");

    TauSequence seq;
    seq.reference_mean = config.reference_mean.value_or(stats::mean(series.view()));
    const double ref = seq.reference_mean;
    const std::size_t n = series.size();

    std::size_t next_extreme = 0;
    std::size_t after = 0;  // next event must lie strictly after this index
    bool first = true;
    for (;;) {
        while (next_extreme < extremes.size() && !first && extremes[next_extreme].index <= after) ++next_extreme;
        if (next_extreme == extremes.size()) break;
        const std::size_t e = extremes[next_extreme].index;
        seq.taus.push_back(e);
        seq.kinds.push_back(TauKind::Extreme);
        first = false;

        std::size_t u = e + 1;
        while (u < n && (series[u - 1] - ref) * (series[u] - ref) > 0.0) ++u;
        if (u >= n) break;
        seq.taus.push_back(u);
        seq.kinds.push_back(TauKind::Crossing);
        after = u;
    }
    return seq;
}

double compute_emrt(const Series& series, const EmrtConfig& config) {
    const TauSequence seq = build_tau_sequence(series, config);
    const std::size_t pairs = seq.pairs();
    if (pairs == 0) throw Error(Errc::NoCompletePairs, "no extreme is followed by a mean crossing");
    double total = 0.0;
    for (std::size_t k = 0; k < pairs; ++k)
        total += static_cast<double>(seq.taus[2 * k + 1] - seq.taus[2 * k]);
    return total / static_cast<double>(pairs);
}

}  // namespace revert
