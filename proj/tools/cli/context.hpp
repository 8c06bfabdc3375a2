#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "api.hpp"
#include "json.hpp"

namespace cli {

using nlohmann::json;
namespace fs = std::filesystem;

// Read access to one JSON object that remembers which keys were consumed, so
// misspelled options are reported instead of silently ignored.
class Block {
public:
    Block(std::string name, json value);

    bool has(const std::string& key) const { return value_.contains(key) && !value_.at(key).is_null(); }
    double real(const std::string& key, double fallback);
    std::optional<double> optional_real(const std::string& key);
    std::uint64_t count(const std::string& key, std::uint64_t fallback);
    bool flag(const std::string& key, bool fallback);
    std::string text(const std::string& key, const std::string& fallback);
    std::string choice(const std::string& key, const std::string& fallback, const std::vector<std::string>& allowed);
    std::vector<std::string> texts(const std::string& key);
    std::vector<double> reals(const std::string& key, std::vector<double> fallback);
    Block child(const std::string& key);
    void finish() const;

private:
    const json& at(const std::string& key);

    std::string name_;
    json value_;
    std::set<std::string> used_;
};

class Context {
public:
    Context(const fs::path& config_path, std::string command);

    const std::string& command() const { return command_; }
    std::uint64_t seed() const { return seed_; }
    const std::string& config_hash() const { return hash_; }
    std::uint64_t derive(const std::string& stream) const { return rv_derive_seed(seed_, stream.c_str()); }

    Block block(const std::string& name) const;
    std::vector<std::string> tickers() const;
    std::optional<std::string> formation_end() const;

    fs::path input_dir() const;
    fs::path resolve(const std::string& path) const;
    fs::path output(const std::string& name) const;

    // CSV files start with a '#' provenance comment; JSON files carry a
    // "provenance" member.
    void write_csv(const std::string& name, const std::string& header, const std::vector<std::string>& rows) const;
    void write_json(const std::string& name, json body) const;
    std::string provenance_comment() const;

private:
    json config_;
    fs::path base_;
    fs::path output_dir_;
    std::string command_;
    std::string hash_;
    std::uint64_t seed_ = 0;
};

// Shortest decimal that reads back to the same double.
std::string fmt(double v);

json read_json(const fs::path& path);

// Price panel built from <input_dir>/<ticker>.csv files.
Panel load_panel(const Context& ctx, const std::vector<std::string>& tickers);
std::vector<std::string> available_tickers(const fs::path& dir);

struct Windows {
    Panel formation;
    Panel trading;
};

// Rows dated before window.formation_end form the formation window, the rest
// the trading window. Without a boundary both windows are the full panel.
Windows split_windows(const Context& ctx, const rv_panel* panel);

Series combine(const rv_panel* panel, const std::vector<double>& coefficients);
Series column(const rv_panel* panel, std::size_t asset);

void write_trades(const Context& ctx, const std::string& name, const rv_trades* trades, const rv_panel* dated);
Trades read_trades(const fs::path& path, const std::string& source);

}  // namespace cli
