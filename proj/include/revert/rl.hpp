#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "revert/marketdata.hpp"
#include "revert/ou.hpp"
#include "revert/rng.hpp"
#include "revert/trades.hpp"

namespace revert {

enum class Position : std::uint8_t { Flat = 0, Long = 1 };
enum class Action : int { Sell = -1, Hold = 0, Buy = 1 };

/// flat -> {Hold, Buy}; long -> {Sell, Hold}. Short entry is never legal.
std::array<Action, 2> legal_actions(Position position) noexcept;
bool is_legal(Position position, Action action) noexcept;
Position apply_action(Position position, Action action);

enum class Encoding {
    Percent,   // 100 * (P_i - P_{i-1}) / P_{i-1}, threshold k in percent
    NormDiff,  // (P_i - P_{i-1}) / scale, threshold k in units of scale
};

struct StateCode {
    std::vector<int> directions;  // oldest first, each in {-2, -1, +1, +2}
    Position position = Position::Flat;

    /// Unique index in [0, 2 * 4^l).
    std::size_t index() const;
    static StateCode from_index(std::size_t index, std::size_t lookback);

    friend bool operator==(const StateCode&, const StateCode&) = default;
};

/// Bucket a single move: +2 above k, +1 on [0, k], -1 on [-k, 0), -2 below -k.
int direction_bucket(double move, double k) noexcept;

/// Encodes the l moves of a window of l+1 prices.
StateCode encode_state(std::span<const double> window, double k, Position position,
                       Encoding mode = Encoding::Percent, double scale = 1.0);

/// Same as encode_state(...).index() without allocating.
std::size_t state_index(std::span<const double> window, double k, Position position,
                        Encoding mode = Encoding::Percent, double scale = 1.0);

/// Rejects a series whose percent encoding would divide by (near) zero:
/// any |P| < 1e-6 * std among the reference prices.
void check_percent_encodable(const Series& series);

class QTable {
public:
    static constexpr std::size_t kMaxLookback = 10;

    explicit QTable(std::size_t lookback);

    std::size_t lookback() const noexcept { return lookback_; }
    std::size_t states() const noexcept { return states_; }

    double value(std::size_t state, Action a) const { return values_[slot(state, a)]; }
    void set_value(std::size_t state, Action a, double v) { values_[slot(state, a)] = v; }
    std::uint64_t visits(std::size_t state, Action a) const { return visits_[slot(state, a)]; }
    void set_visits(std::size_t state, Action a, std::uint64_t n) { visits_[slot(state, a)] = n; }
    void record_visit(std::size_t state, Action a) { ++visits_[slot(state, a)]; }

    Position position_of(std::size_t state) const noexcept {
        return state >= states_ / 2 ? Position::Long : Position::Flat;
    }

    /// max over legal actions of `state`.
    double best_value(std::size_t state) const;

    friend bool operator==(const QTable&, const QTable&) = default;

private:
    std::size_t slot(std::size_t state, Action a) const;

    std::size_t lookback_;
    std::size_t states_;
    std::vector<double> values_;
    std::vector<std::uint64_t> visits_;
};

/// A * (theta - x) - c * |A|.
double reward(Action action, double x, double theta, double cost) noexcept;

/// Q(s,a) += alpha * (r + gamma * max_{a' legal in s'} Q(s',a') - Q(s,a)).
void q_update(QTable& table, std::size_t s, Action a, double r, std::size_t s_next, double alpha, double gamma);

/// Update with no successor (episode end): Q(s,a) += alpha * (r - Q(s,a)).
void q_update_terminal(QTable& table, std::size_t s, Action a, double r, double alpha);

/// Argmax over legal actions; ties prefer Hold, then the lower action value.
Action greedy_action(const QTable& table, std::size_t s);

/// Uniform legal action with probability epsilon, greedy otherwise.
Action select_action(const QTable& table, std::size_t s, double epsilon, Rng& rng);

struct RLConfig {
    std::size_t lookback = 4;
    double move_threshold = 3.0;
    double learning_rate = 0.1;
    double discount = 0.99;
    double epsilon = 0.1;
    std::size_t episodes = 10;
    double transaction_cost = 0.0;
    double interest_rate = 0.0;  // reporting only; training discounts through gamma
    std::uint64_t seed = 0;
    Encoding encoding = Encoding::Percent;
    double encoding_scale = 0.0;  // NormDiff unit; <= 0 means the walked series' sample std

    void validate() const;
};

struct ParamRange {
    double lo = 0.0;
    double hi = 0.0;
    double draw(Rng& rng) const;
};

/// Simulated OU spreads for training. Each path draws its parameters uniformly
/// from the ranges; equal bounds give a fixed parameter set.
struct EnvConfig {
    ParamRange mu{1.0, 1.0};
    ParamRange theta{1.0, 1.0};
    ParamRange sigma{0.1, 0.1};
    double horizon = 252.0;
    std::size_t n_steps = 252;
    std::size_t paths = 10'000;
    std::optional<double> x0;  // defaults to the path's theta
    std::uint64_t seed = 0;

    void validate() const;
};

struct EnvPath {
    Series series;
    double theta = 0.0;  // true mean, used by the reward
};

/// Path i uses stream "env/path/<i>" of the env seed.
std::vector<EnvPath> make_env(const EnvConfig& config);
EnvPath make_env_path(const EnvConfig& config, std::size_t i);

/// Epsilon-greedy Q-learning over the paths. One episode is one pass over all
/// paths in a seeded shuffled order; an open long is liquidated at each path end.
QTable train(std::span<const EnvPath> paths, const RLConfig& config);

/// Greedy rollout. Emits the buy/sell points; an open long is closed at the
/// last sample.
TradeList evaluate(const QTable& table, const Series& spread, const RLConfig& config);

}  // namespace revert
