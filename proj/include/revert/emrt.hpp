#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "revert/marketdata.hpp"

namespace revert {

enum class ExtremeKind { Minimum, Maximum };

struct ExtremePoint {
    std::size_t index = 0;
    ExtremeKind kind = ExtremeKind::Minimum;
    double value = 0.0;

    friend bool operator==(const ExtremePoint&, const ExtremePoint&) = default;
};

/// Which important extremes may open a reversion interval.
enum class ExtremeMode { Both, MaximaOnly };

struct EmrtConfig {
    double c_threshold = 2.0;
    std::optional<double> reference_mean;  // sample mean of the series when unset
    ExtremeMode extremes = ExtremeMode::Both;

    void validate() const;
};

enum class TauKind { Extreme, Crossing };

struct TauSequence {
    std::vector<std::size_t> taus;
    std::vector<TauKind> kinds;  // alternates, starting with Extreme
    double reference_mean = 0.0;

    /// Number of complete (extreme, crossing) pairs.
    std::size_t pairs() const noexcept { return taus.size() / 2; }
};

/// Important minima and maxima in index order.
///
/// X[m] is an important minimum when some segment X[i..j] containing m has X[m]
/// as its minimum and both X[i] - X[m] and X[j] - X[m] are at least c * s, with
/// s the sample standard deviation (maxima symmetric). Computed in one
/// left-to-right pass with a monotone stack per direction, O(n).
std::vector<ExtremePoint> find_important_extremes(const Series& series, double c);

/// Alternating extreme / mean-crossing times. A crossing at t means
/// (X[t-1] - mean) * (X[t] - mean) <= 0 with t after the preceding extreme.
TauSequence build_tau_sequence(const Series& series, const EmrtConfig& config);

/// Mean duration, in samples, from each important extreme to the next mean
/// crossing. A trailing extreme without a crossing contributes nothing.
double compute_emrt(const Series& series, const EmrtConfig& config);

}  // namespace revert
