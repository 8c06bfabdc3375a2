#include "revert/trades.hpp"

namespace revert {

std::size_t count_violations(const TradeList& trades) {
    std::size_t bad = 0;
    bool long_now = false;
    for (std::size_t i = 0; i < trades.events.size(); ++i) {
        const auto& e = trades.events[i];
        if (i > 0 && e.time <= trades.events[i - 1].time) ++bad;
        if (e.action == 1) {
            if (long_now) ++bad;
            long_now = true;
        } else if (e.action == -1) {
            if (!long_now) ++bad;
            long_now = false;
        } else {
            ++bad;
        }
    }
    return bad;
}

}  // namespace revert
