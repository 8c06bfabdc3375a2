#pragma once

#include <cmath>
#include <cstddef>
#include <span>

namespace revert::stats {

inline double mean(std::span<const double> x) {
    double sum = 0.0;
    for (double v : x) sum += v;
    return x.empty() ? 0.0 : sum / static_cast<double>(x.size());
}

// Two-pass sample variance, denominator n-1. Returns 0 for n < 2.
inline double sample_variance(std::span<const double> x) {
    if (x.size() < 2) return 0.0;
    const double m = mean(x);
    double acc = 0.0;
    for (double v : x) acc += (v - m) * (v - m);
    return acc / static_cast<double>(x.size() - 1);
}

inline double sample_std(std::span<const double> x) { return std::sqrt(sample_variance(x)); }

}  // namespace revert::stats
