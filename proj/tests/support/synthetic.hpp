#pragma once

// Seeded synthetic price constructions shared by unit and acceptance tests.

#include <cmath>
#include <cstdint>
#include <numbers>
#include <random>
#include <vector>

#include "revert/marketdata.hpp"

namespace synthetic {

// Exact OU recursion started at 0 with step dt, independent of the library simulator.
inline std::vector<double> ou_noise(std::size_t n, double mu, double sigma, std::uint64_t seed, double dt = 1.0) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    const double decay = std::exp(-mu * dt);
    const double sd = sigma * std::sqrt((1.0 - std::exp(-2.0 * mu * dt)) / (2.0 * mu));
    std::vector<double> x(n);
    double v = 0.0;
    for (double& e : x) {
        e = v;
        v = v * decay + sd * normal(rng);
    }
    return x;
}

inline std::vector<revert::Date> business_days(std::size_t n) {
    std::vector<revert::Date> out;
    std::int32_t d = revert::Date::parse_iso("2022-01-03").days;
    while (out.size() < n) {
        const int weekday = ((d % 7) + 7 + 3) % 7;  // 0 = Monday
        if (weekday < 5) out.push_back(revert::Date{d});
        ++d;
    }
    return out;
}

// S2 = trend + seasonal wave, S1 = 0.5 * S2 + fast OU noise.
inline revert::PricePanel half_pair(std::uint64_t seed, std::size_t n = 250) {
    const auto noise = ou_noise(n, 0.5, 1.0, seed);
    std::vector<double> prices;
    for (std::size_t t = 0; t < n; ++t) {
        const double td = static_cast<double>(t);
        const double s2 = 100.0 + 40.0 * td / static_cast<double>(n) + 15.0 * std::sin(2.0 * std::numbers::pi * td / 120.0);
        prices.push_back(0.5 * s2 + noise[t]);
        prices.push_back(s2);
    }
    return revert::PricePanel(business_days(n), {"S1", "S2"}, prices);
}

// S2 = positive random walk, S1 = 0.7 * S2 + OU(mu = 5, theta = 0, sigma = 0.5) in
// years, sampled on a 252-day grid.
inline std::pair<revert::Series, revert::Series> ou_pair(std::uint64_t seed, std::size_t n = 500) {
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::normal_distribution<double> normal(0.0, 1.0);
    const auto noise = ou_noise(n, 5.0, 0.5, seed, 1.0 / 252.0);
    revert::Series s1, s2;
    double w = 50.0;
    for (std::size_t t = 0; t < n; ++t) {
        s2.values.push_back(w);
        s1.values.push_back(0.7 * w + noise[t]);
        w += normal(rng);
        if (w < 5.0) w = 10.0 - w;
    }
    return {s1, s2};
}

}  // namespace synthetic
