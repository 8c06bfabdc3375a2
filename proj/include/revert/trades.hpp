#pragma once

#include <cstddef>
#include <string>
#include <vector>

namespace revert {

struct TradeEvent {
    std::size_t time = 0;
    int action = 0;  // +1 buy, -1 sell

    friend bool operator==(const TradeEvent&, const TradeEvent&) = default;
};

struct TradeList {
    std::vector<TradeEvent> events;
    std::string source;

    bool ends_flat() const noexcept { return events.empty() || events.back().action == -1; }
};

/// Number of legality violations: a buy while long, a sell while flat, an
/// action outside {-1, +1}, or a non-increasing time. Zero means the list
/// alternates +1/-1 starting with +1 and never goes short.
std::size_t count_violations(const TradeList& trades);

}  // namespace revert
