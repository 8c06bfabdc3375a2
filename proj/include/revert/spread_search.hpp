#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <vector>

#include "revert/emrt.hpp"
#include "revert/marketdata.hpp"

namespace revert {

struct SearchConfig {
    double grid_min = -3.0;
    double grid_max = 3.0;
    double grid_step = 0.01;
    double c_threshold = 2.0;
    std::optional<double> variance_cap;  // candidates with sample variance >= cap are skipped
    double min_spread_std = 1e-8;
    std::uint64_t max_evaluations = 10'000'000;
    // Coordinate descent instead of GridTooLarge when the full product
    // exceeds max_evaluations.
    bool refine_when_over_budget = false;

    void validate() const;
    std::size_t grid_points() const;
    double grid_value(std::size_t k) const;
};

struct SearchResult {
    std::vector<double> coefficients;  // coefficients[0] == 1
    double emrt = 0.0;
    Series spread;
    std::size_t evaluated = 0;
    std::size_t skipped = 0;
    bool exhaustive = true;  // false when coordinate descent was used
};

/// Outcome of scoring one candidate; nullopt emrt means it was skipped.
struct CandidateScore {
    std::optional<double> emrt;
    Series spread;
};

CandidateScore score_candidate(const PricePanel& panel, const std::vector<double>& coefficients,
                               const SearchConfig& config);

/// Strict weak order used to pick the winner: smaller EMRT, then smaller L1
/// norm, then lexicographically smaller coefficients.
bool better_candidate(double emrt_a, const std::vector<double>& a, double emrt_b, const std::vector<double>& b);

/// Grid search over a_2..a_n with a_1 = 1 for the spread of minimal EMRT.
SearchResult search_coefficients(const PricePanel& panel, const SearchConfig& config);

}  // namespace revert
