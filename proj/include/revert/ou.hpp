#pragma once

#include <cstddef>
#include <cstdint>

#include "revert/marketdata.hpp"

namespace revert {

/// dX = mu (theta - X) dt + sigma dW.
struct OUParams {
    double mu = 1.0;     // reversion speed, 1/time
    double theta = 0.0;  // long-term mean
    double sigma = 1.0;  // volatility per sqrt(time)

    void validate() const;  // throws Errc::InvalidParams
};

struct SimConfig {
    OUParams params;
    double x0 = 0.0;
    double horizon = 1.0;  // T
    std::size_t n_steps = 1000;
    std::uint64_t seed = 0;

    double dt() const { return horizon / static_cast<double>(n_steps - 1); }
    void validate() const;
};

/// One OU path of n_steps samples on [0, T] using the exact Gaussian
/// transition, so the result has no discretization bias.
Series simulate_ou(const SimConfig& config);

struct OUFit {
    OUParams params;
    double avg_log_likelihood = 0.0;  // per transition; +inf for a noiseless fit
    double ar_intercept = 0.0;
    double ar_slope = 0.0;
};

/// Exact-discretization MLE through the equivalent AR(1) regression
/// x[t+1] = a + b x[t] + e. Requires 0 < b < 1.
OUFit fit_ou_mle(const Series& series, double dt);

/// Stationary standard deviation sigma / sqrt(2 mu).
double sigma_eq(const OUParams& params);

}  // namespace revert
