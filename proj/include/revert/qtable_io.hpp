#pragma once

#include <filesystem>
#include <string>

#include "revert/rl.hpp"

namespace revert {

// On-disk agent: a flat CSV `state,action,value,visits` with one row per legal
// (state, action) pair, plus a JSON sidecar holding the RLConfig. Lines in the
// CSV starting with '#' are comments.

std::string rl_config_to_json(const RLConfig& config);
RLConfig rl_config_from_json(const std::string& text);

void save_qtable(const QTable& table, const RLConfig& config, const std::filesystem::path& csv_path,
                 const std::filesystem::path& json_path, const std::string& comment = {});

struct LoadedAgent {
    QTable table;
    RLConfig config;
};

LoadedAgent load_qtable(const std::filesystem::path& csv_path, const std::filesystem::path& json_path);

/// Shortest round-trip decimal form.
std::string format_real(double v);

}  // namespace revert
