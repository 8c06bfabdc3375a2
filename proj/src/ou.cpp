#include "revert/ou.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "revert/error.hpp"
#include "revert/rng.hpp"

namespace revert {

void OUParams::validate() const {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw Error(Errc::InvalidParams, "OU mu must be positive");
    if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw Error(Errc::InvalidParams, "OU sigma must be non-negative");
    if (!std::isfinite(theta)) throw Error(Errc::InvalidParams, "OU theta must be finite");
}

void SimConfig::validate() const {
    params.validate();
    if (!(horizon > 0.0) || !std::isfinite(horizon)) throw Error(Errc::InvalidParams, "horizon must be positive");
    if (n_steps < 2) throw Error(Errc::InvalidParams, "n_steps must be at least 2");
    if (!std::isfinite(x0)) throw Error(Errc::InvalidParams, "x0 must be finite");
}

Series simulate_ou(const SimConfig& config) {
    config.validate();
    const auto& p = config.params;
    const double dt = config.dt();
    const double decay = std::exp(-p.mu * dt);
    const double noise_sd = p.sigma * std::sqrt(-std::expm1(-2.0 * p.mu * dt) / (2.0 * p.mu));

    Rng rng(config.seed);
    std::normal_distribution<double> normal(0.0, 1.0);

    Series out;
    out.origin = "ou";
    out.values.resize(config.n_steps);
    double x = config.x0;
    out.values[0] = x;
    for (std::size_t i = 1; i < config.n_steps; ++i) {
        x = p.theta + (x - p.theta) * decay + noise_sd * normal(rng);
        out.values[i] = x;
    }
    return out;
}

OUFit fit_ou_mle(const Series& series, double dt) {
    if (!(dt > 0.0)) throw Error(Errc::InvalidArgument, "dt must be positive");
    const std::size_t n = series.size();
    if (n < 10) throw Error(Errc::DegenerateSeries, "OU fit needs at least 10 samples");

    const std::size_t m = n - 1;  // transitions
    double mx = 0.0, my = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
        mx += series[t];
        my += series[t + 1];
    }
    mx /= static_cast<double>(m);
    my /= static_cast<double>(m);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
        const double dx = series[t] - mx;
        sxx += dx * dx;
        sxy += dx * (series[t + 1] - my);
    }
    if (!(sxx > 0.0)) throw Error(Errc::DegenerateSeries, "series is constant");

    const double b = sxy / sxx;
    const double a = my - b * mx;
    if (!(b > 0.0 && b < 1.0))
        throw Error(Errc::NonMeanReverting, "fitted AR(1) slope " + std::to_string(b) + " is outside (0, 1)");

    double rss = 0.0;
    for (std::size_t t = 0; t < m; ++t) {
        const double e = series[t + 1] - a - b * series[t];
        rss += e * e;
    }
    const double var_e = rss / static_cast<double>(m);

    OUFit fit;
    fit.ar_intercept = a;
    fit.ar_slope = b;
    fit.params.mu = -std::log(b) / dt;
    fit.params.theta = a / (1.0 - b);
    fit.params.sigma = std::sqrt(var_e * 2.0 * fit.params.mu / (1.0 - b * b));
    fit.avg_log_likelihood = var_e > 0.0
        ? -0.5 * std::log(2.0 * std::numbers::pi * var_e) - 0.5
        : std::numeric_limits<double>::infinity();
    return fit;
}

double sigma_eq(const OUParams& params) {
    if (!(params.mu > 0.0)) throw Error(Errc::InvalidParams, "sigma_eq needs mu > 0");
    return params.sigma / std::sqrt(2.0 * params.mu);
}

}  // namespace revert
