#include "revert/rl.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "revert/error.hpp"
#include "revert/stats.hpp"

namespace revert {

namespace {

int digit_of(int direction) {
    switch (direction) {
        case -2: return 0;
        case -1: return 1;
        case 1: return 2;
        case 2: return 3;
        default: throw Error(Errc::InvalidArgument, "direction must be one of -2, -1, +1, +2");
    }
}

constexpr int kDirectionOfDigit[4] = {-2, -1, 1, 2};

std::size_t pow4(std::size_t l) { return std::size_t{1} << (2 * l); }

double move_of(double prev, double cur, Encoding mode, double scale) {
    if (mode == Encoding::Percent) {
        if (prev == 0.0) throw Error(Errc::ZeroReferencePrice, "zero reference price in percent encoding");
        return (cur - prev) / prev * 100.0;
    }
    return (cur - prev) / scale;
}

double resolve_scale(const RLConfig& config, const Series& series) {
    if (config.encoding != Encoding::NormDiff) return 1.0;
    if (config.encoding_scale > 0.0) return config.encoding_scale;
    const double s = stats::sample_std(series.view());
    if (!(s > 0.0)) throw Error(Errc::DegenerateSeries, "cannot derive an encoding scale from a constant series");
    return s;
}

void check_walkable(const Series& series, const RLConfig& config) {
    if (series.size() < config.lookback + 2)
        throw Error(Errc::WindowTooShort, "series of length " + std::to_string(series.size()) +
                                              " is too short for lookback " + std::to_string(config.lookback));
    if (config.encoding == Encoding::Percent) check_percent_encodable(series);
}

}  // namespace

std::array<Action, 2> legal_actions(Position position) noexcept {
    if (position == Position::Flat) return {Action::Hold, Action::Buy};
    return {Action::Sell, Action::Hold};
}

bool is_legal(Position position, Action action) noexcept {
    const auto legal = legal_actions(position);
    return legal[0] == action || legal[1] == action;
}

Position apply_action(Position position, Action action) {
    if (!is_legal(position, action)) throw Error(Errc::IllegalAction, "action is not legal in this position");
    if (action == Action::Buy) return Position::Long;
    if (action == Action::Sell) return Position::Flat;
    return position;
}

std::size_t StateCode::index() const {
    if (directions.size() > QTable::kMaxLookback) throw Error(Errc::InvalidArgument, "lookback too large");
    std::size_t acc = 0;
    for (int d : directions) acc = acc * 4 + static_cast<std::size_t>(digit_of(d));
    return acc + (position == Position::Long ? pow4(directions.size()) : 0);
}

StateCode StateCode::from_index(std::size_t index, std::size_t lookback) {
    const std::size_t base = pow4(lookback);
    if (index >= 2 * base) throw Error(Errc::InvalidArgument, "state index out of range");
    StateCode code;
    code.position = index >= base ? Position::Long : Position::Flat;
    std::size_t rest = index % base;
    code.directions.assign(lookback, 0);
    for (std::size_t i = lookback; i-- > 0;) {
        code.directions[i] = kDirectionOfDigit[rest % 4];
        rest /= 4;
    }
    return code;
}

int direction_bucket(double move, double k) noexcept {
    if (move > k) return 2;
    if (move >= 0.0) return 1;
    if (move >= -k) return -1;
    return -2;
}

StateCode encode_state(std::span<const double> window, double k, Position position, Encoding mode, double scale) {
    if (window.size() < 2) throw Error(Errc::WindowTooShort, "state window needs at least two prices");
    if (!(k > 0.0)) throw Error(Errc::InvalidArgument, "move threshold must be positive");
    StateCode code;
    code.position = position;
    for (std::size_t i = 1; i < window.size(); ++i)
        code.directions.push_back(direction_bucket(move_of(window[i - 1], window[i], mode, scale), k));
    return code;
}

std::size_t state_index(std::span<const double> window, double k, Position position, Encoding mode, double scale) {
    if (window.size() < 2) throw Error(Errc::WindowTooShort, "state window needs at least two prices");
    const std::size_t l = window.size() - 1;
    std::size_t acc = 0;
    for (std::size_t i = 1; i < window.size(); ++i)
        acc = acc * 4 + static_cast<std::size_t>(digit_of(direction_bucket(move_of(window[i - 1], window[i], mode, scale), k)));
    return acc + (position == Position::Long ? pow4(l) : 0);
}

void check_percent_encodable(const Series& series) {
    const double floor = 1e-6 * stats::sample_std(series.view());
    for (std::size_t i = 0; i + 1 < series.size(); ++i)
        if (std::abs(series[i]) < floor || series[i] == 0.0)
            throw Error(Errc::ZeroReferencePrice,
                        "spread value at index " + std::to_string(i) + " is too close to zero for percent encoding");
}

QTable::QTable(std::size_t lookback) : lookback_(lookback) {
    if (lookback == 0 || lookback > kMaxLookback)
        throw Error(Errc::InvalidArgument, "lookback must be in [1, " + std::to_string(kMaxLookback) + "]");
    states_ = 2 * pow4(lookback);
    values_.assign(states_ * 3, 0.0);
    visits_.assign(states_ * 3, 0);
}

std::size_t QTable::slot(std::size_t state, Action a) const {
    if (state >= states_) throw Error(Errc::InvalidArgument, "state index out of range");
    return state * 3 + static_cast<std::size_t>(static_cast<int>(a) + 1);
}

double QTable::best_value(std::size_t state) const {
    const auto legal = legal_actions(position_of(state));
    return std::max(value(state, legal[0]), value(state, legal[1]));
}

double reward(Action action, double x, double theta, double cost) noexcept {
    const double a = static_cast<double>(static_cast<int>(action));
    return a * (theta - x) - cost * std::abs(a);
}

void q_update(QTable& table, std::size_t s, Action a, double r, std::size_t s_next, double alpha, double gamma) {
    if (!is_legal(table.position_of(s), a)) throw Error(Errc::IllegalAction, "q_update with an illegal action");
    const double q = table.value(s, a);
    table.set_value(s, a, q + alpha * (r + gamma * table.best_value(s_next) - q));
    table.record_visit(s, a);
}

void q_update_terminal(QTable& table, std::size_t s, Action a, double r, double alpha) {
    if (!is_legal(table.position_of(s), a)) throw Error(Errc::IllegalAction, "q_update with an illegal action");
    const double q = table.value(s, a);
    table.set_value(s, a, q + alpha * (r - q));
    table.record_visit(s, a);
}

Action greedy_action(const QTable& table, std::size_t s) {
    const auto legal = legal_actions(table.position_of(s));
    Action best = legal[0];
    for (Action a : legal) {
        const double qa = table.value(s, a), qb = table.value(s, best);
        if (qa > qb) {
            best = a;
        } else if (qa == qb && a != best) {
            if (a == Action::Hold || (best != Action::Hold && static_cast<int>(a) < static_cast<int>(best))) best = a;
        }
    }
    return best;
}

Action select_action(const QTable& table, std::size_t s, double epsilon, Rng& rng) {
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    if (unit(rng) < epsilon) {
        const auto legal = legal_actions(table.position_of(s));
        return legal[std::uniform_int_distribution<int>(0, 1)(rng)];
    }
    return greedy_action(table, s);
}

void RLConfig::validate() const {
    if (lookback == 0 || lookback > QTable::kMaxLookback) throw Error(Errc::InvalidArgument, "lookback out of range");
    if (!(move_threshold > 0.0)) throw Error(Errc::InvalidArgument, "move threshold k must be positive");
    if (!(learning_rate > 0.0 && learning_rate <= 1.0)) throw Error(Errc::InvalidArgument, "learning rate must be in (0, 1]");
    if (!(discount >= 0.0 && discount <= 1.0)) throw Error(Errc::InvalidArgument, "discount must be in [0, 1]");
    if (!(epsilon >= 0.0 && epsilon <= 1.0)) throw Error(Errc::InvalidArgument, "epsilon must be in [0, 1]");
    if (!(transaction_cost >= 0.0)) throw Error(Errc::InvalidArgument, "transaction cost must be non-negative");
}

double ParamRange::draw(Rng& rng) const {
    if (lo == hi) return lo;
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

void EnvConfig::validate() const {
    for (const ParamRange* r : {&mu, &theta, &sigma})
        if (!(r->lo <= r->hi)) throw Error(Errc::InvalidParams, "parameter range has lo > hi");
    if (!(mu.lo > 0.0)) throw Error(Errc::InvalidParams, "mu range must be positive");
    if (!(sigma.lo >= 0.0)) throw Error(Errc::InvalidParams, "sigma range must be non-negative");
    if (!(horizon > 0.0)) throw Error(Errc::InvalidParams, "horizon must be positive");
    if (n_steps < 2) throw Error(Errc::InvalidParams, "n_steps must be at least 2");
}

EnvPath make_env_path(const EnvConfig& config, std::size_t i) {
    Rng rng = make_rng(config.seed, "env/path/" + std::to_string(i));
    SimConfig sim;
    sim.params.mu = config.mu.draw(rng);
    sim.params.theta = config.theta.draw(rng);
    sim.params.sigma = config.sigma.draw(rng);
    sim.x0 = config.x0.value_or(sim.params.theta);
    sim.horizon = config.horizon;
    sim.n_steps = config.n_steps;
    sim.seed = rng();
    return {simulate_ou(sim), sim.params.theta};
}

std::vector<EnvPath> make_env(const EnvConfig& config) {
    config.validate();
    std::vector<EnvPath> out;
    out.reserve(config.paths);
    for (std::size_t i = 0; i < config.paths; ++i) out.push_back(make_env_path(config, i));
    return out;
}

QTable train(std::span<const EnvPath> paths, const RLConfig& config) {
    config.validate();
    QTable table(config.lookback);
    const std::size_t l = config.lookback;
    for (const auto& p : paths) check_walkable(p.series, config);

    std::vector<double> scales;
    for (const auto& p : paths) scales.push_back(resolve_scale(config, p.series));

    Rng policy = make_rng(config.seed, "train/policy");
    std::vector<std::size_t> order(paths.size());
    for (std::size_t e = 0; e < config.episodes; ++e) {
        std::iota(order.begin(), order.end(), std::size_t{0});
        Rng shuffler = make_rng(config.seed, "train/episode/" + std::to_string(e));
        std::shuffle(order.begin(), order.end(), shuffler);

        for (std::size_t pi : order) {
            const auto& x = paths[pi].series.values;
            const double theta = paths[pi].theta;
            const double scale = scales[pi];
            const std::size_t n = x.size();
            auto window = [&](std::size_t t) { return std::span<const double>(x.data() + t - l, l + 1); };

            Position pos = Position::Flat;
            std::size_t s = state_index(window(l), config.move_threshold, pos, config.encoding, scale);
            for (std::size_t t = l; t + 1 < n; ++t) {
                const Action a = select_action(table, s, config.epsilon, policy);
                const double r = reward(a, x[t], theta, config.transaction_cost);
                pos = apply_action(pos, a);
                const std::size_t s_next = state_index(window(t + 1), config.move_threshold, pos, config.encoding, scale);
                q_update(table, s, a, r, s_next, config.learning_rate, config.discount);
                s = s_next;
            }
            if (pos == Position::Long)
                q_update_terminal(table, s, Action::Sell, reward(Action::Sell, x[n - 1], theta, config.transaction_cost),
                                  config.learning_rate);
        }
    }
    return table;
}

TradeList evaluate(const QTable& table, const Series& spread, const RLConfig& config) {
    if (table.lookback() != config.lookback) throw Error(Errc::InvalidArgument, "table lookback does not match config");
    check_walkable(spread, config);
    const double scale = resolve_scale(config, spread);
    const std::size_t l = config.lookback;
    const auto& x = spread.values;
    const std::size_t n = x.size();

    TradeList out;
    out.source = "rl";
    Position pos = Position::Flat;
    for (std::size_t t = l; t + 1 < n; ++t) {
        const std::size_t s = state_index(std::span<const double>(x.data() + t - l, l + 1), config.move_threshold, pos,
                                          config.encoding, scale);
        const Action a = greedy_action(table, s);
        if (a != Action::Hold) out.events.push_back({t, static_cast<int>(a)});
        pos = apply_action(pos, a);
    }
    if (pos == Position::Long) out.events.push_back({n - 1, -1});
    return out;
}

}  // namespace revert
