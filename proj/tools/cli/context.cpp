#include "context.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace cli {

namespace {

std::uint64_t fnv1a(const std::string& s) {
    std::uint64_t h = 1469598103934665603ULL;
    for (unsigned char c : s) {
        h ^= c;
        h *= 1099511628211ULL;
    }
    return h;
}

std::string hex(std::uint64_t v) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
    return buf;
}

const std::set<std::string> kTopLevel = {"seed",     "input_dir",  "output_dir", "tickers",  "window",
                                         "simulate", "emrt",       "table1",     "fit_spread", "train",
                                         "evaluate", "benchmark",  "backtest",   "report"};

void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw Failure(RV_ERR_IO, "cannot write " + path.string(), 0, path.string());
    out << content;
    if (!out) throw Failure(RV_ERR_IO, "failed writing " + path.string(), 0, path.string());
}

}  // namespace

std::string fmt(double v) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, end);
}

json read_json(const fs::path& path) {
    std::ifstream in(path);
    if (!in) throw Failure(RV_ERR_MISSING_FILE, "cannot open " + path.string(), 0, path.string());
    try {
        return json::parse(in);
    } catch (const json::parse_error& e) {
        throw Failure(RV_ERR_MALFORMED_ROW, path.string() + ": " + e.what(), 0, path.string());
    }
}

Block::Block(std::string name, json value) : name_(std::move(name)), value_(std::move(value)) {
    if (value_.is_null()) value_ = json::object();
    if (!value_.is_object()) throw ConfigError("'" + name_ + "' must be a JSON object");
}

const json& Block::at(const std::string& key) {
    used_.insert(key);
    return value_.at(key);
}

double Block::real(const std::string& key, double fallback) {
    if (!has(key)) {
        used_.insert(key);
        return fallback;
    }
    const json& v = at(key);
    if (!v.is_number()) throw ConfigError(name_ + "." + key + " must be a number");
    return v.get<double>();
}

std::optional<double> Block::optional_real(const std::string& key) {
    used_.insert(key);
    if (!has(key)) return std::nullopt;
    return real(key, 0.0);
}

std::uint64_t Block::count(const std::string& key, std::uint64_t fallback) {
    if (!has(key)) {
        used_.insert(key);
        return fallback;
    }
    const json& v = at(key);
    if (!v.is_number_unsigned()) throw ConfigError(name_ + "." + key + " must be a non-negative integer");
    return v.get<std::uint64_t>();
}

bool Block::flag(const std::string& key, bool fallback) {
    if (!has(key)) {
        used_.insert(key);
        return fallback;
    }
    const json& v = at(key);
    if (!v.is_boolean()) throw ConfigError(name_ + "." + key + " must be true or false");
    return v.get<bool>();
}

std::string Block::text(const std::string& key, const std::string& fallback) {
    if (!has(key)) {
        used_.insert(key);
        return fallback;
    }
    const json& v = at(key);
    if (!v.is_string()) throw ConfigError(name_ + "." + key + " must be a string");
    return v.get<std::string>();
}

std::string Block::choice(const std::string& key, const std::string& fallback, const std::vector<std::string>& allowed) {
    std::string v = text(key, fallback);
    if (std::find(allowed.begin(), allowed.end(), v) == allowed.end()) {
        std::string list;
        for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
        throw ConfigError(name_ + "." + key + " must be one of: " + list);
    }
    return v;
}

std::vector<std::string> Block::texts(const std::string& key) {
    used_.insert(key);
    if (!has(key)) return {};
    const json& v = at(key);
    if (!v.is_array()) throw ConfigError(name_ + "." + key + " must be an array of strings");
    std::vector<std::string> out;
    for (const auto& e : v) {
        if (!e.is_string()) throw ConfigError(name_ + "." + key + " must be an array of strings");
        out.push_back(e.get<std::string>());
    }
    return out;
}

std::vector<double> Block::reals(const std::string& key, std::vector<double> fallback) {
    used_.insert(key);
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_array()) throw ConfigError(name_ + "." + key + " must be an array of numbers");
    std::vector<double> out;
    for (const auto& e : v) {
        if (!e.is_number()) throw ConfigError(name_ + "." + key + " must be an array of numbers");
        out.push_back(e.get<double>());
    }
    return out;
}

Block Block::child(const std::string& key) {
    used_.insert(key);
    return Block(name_ + "." + key, has(key) ? value_.at(key) : json::object());
}

void Block::finish() const {
    for (const auto& [k, v] : value_.items())
        if (!used_.count(k)) throw ConfigError("unknown option " + name_ + "." + k);
}

Context::Context(const fs::path& config_path, std::string command) : command_(std::move(command)) {
    try {
        config_ = read_json(config_path);
    } catch (const Failure& e) {
        if (e.status != RV_ERR_MALFORMED_ROW) throw;
        throw ConfigError(e.what());
    }
    if (!config_.is_object()) throw ConfigError("config must be a JSON object");
    for (const auto& [k, v] : config_.items())
        if (!kTopLevel.count(k)) throw ConfigError("unknown top-level option '" + k + "'");
    hash_ = hex(fnv1a(config_.dump()));
    base_ = fs::absolute(config_path).parent_path();

    if (config_.contains("seed")) {
        if (!config_["seed"].is_number_unsigned()) throw ConfigError("seed must be a non-negative integer");
        seed_ = config_["seed"].get<std::uint64_t>();
    }
    if (const char* env = std::getenv("REVERT_OUTPUT_DIR"); env && *env) {
        output_dir_ = fs::absolute(env);
    } else {
        if (!config_.contains("output_dir") || !config_["output_dir"].is_string())
            throw ConfigError("output_dir must be set (or REVERT_OUTPUT_DIR)");
        output_dir_ = resolve(config_["output_dir"].get<std::string>());
    }
}

Block Context::block(const std::string& name) const {
    return Block(name, config_.contains(name) ? config_.at(name) : json::object());
}

std::vector<std::string> Context::tickers() const {
    Block top("config", json::object({{"tickers", config_.value("tickers", json::array())}}));
    return top.texts("tickers");
}

std::optional<std::string> Context::formation_end() const {
    Block w = block("window");
    std::optional<std::string> out;
    if (w.has("formation_end")) out = w.text("formation_end", "");
    w.finish();
    return out;
}

fs::path Context::input_dir() const {
    if (!config_.contains("input_dir") || !config_["input_dir"].is_string()) throw ConfigError("input_dir must be set");
    return resolve(config_["input_dir"].get<std::string>());
}

fs::path Context::resolve(const std::string& path) const {
    fs::path p(path);
    return (p.is_absolute() ? p : base_ / p).lexically_normal();
}

fs::path Context::output(const std::string& name) const {
    std::error_code ec;
    fs::create_directories(output_dir_, ec);
    if (ec) throw Failure(RV_ERR_IO, "cannot create " + output_dir_.string() + ": " + ec.message(), 0, output_dir_.string());
    return output_dir_ / name;
}

std::string Context::provenance_comment() const {
    return "# revert " + command_ + " config_hash=" + hash_ + " seed=" + std::to_string(seed_);
}

void Context::write_csv(const std::string& name, const std::string& header, const std::vector<std::string>& rows) const {
    std::string body = provenance_comment() + "\n" + header + "\n";
    for (const auto& r : rows) body += r + "\n";
    write_file(output(name), body);
}

void Context::write_json(const std::string& name, json body) const {
    body["provenance"] = {{"command", command_}, {"config_hash", hash_}, {"seed", seed_}, {"version", rv_version()}};
    write_file(output(name), body.dump(2) + "\n");
}

std::vector<std::string> available_tickers(const fs::path& dir) {
    std::vector<std::string> out;
    std::error_code ec;
    if (fs::is_directory(dir, ec))
        for (const auto& e : fs::directory_iterator(dir))
            if (e.is_regular_file() && e.path().extension() == ".csv") out.push_back(e.path().stem().string());
    if (out.empty()) throw Failure(RV_ERR_MISSING_FILE, "no price CSVs in " + dir.string(), 0, dir.string());
    std::sort(out.begin(), out.end());
    return out;
}

Panel load_panel(const Context& ctx, const std::vector<std::string>& tickers) {
    if (tickers.empty()) throw ConfigError("no tickers given");
    const fs::path dir = ctx.input_dir();
    std::vector<Series> owned;
    std::vector<const rv_series*> raw;
    std::vector<const char*> names;
    for (const auto& t : tickers) {
        const fs::path file = dir / (t + ".csv");
        rv_series* s = nullptr;
        check(rv_load_price_csv(file.string().c_str(), t.c_str(), &s), file.string());
        owned.emplace_back(s);
        raw.push_back(s);
        names.push_back(t.c_str());
    }
    rv_panel* p = nullptr;
    check(rv_panel_align(raw.data(), names.data(), raw.size(), &p));
    return Panel(p);
}

Windows split_windows(const Context& ctx, const rv_panel* panel) {
    const std::size_t rows = rv_panel_rows(panel);
    std::size_t cut = 0;
    if (auto end = ctx.formation_end()) {
        int32_t days = 0;
        check(rv_parse_date(end->c_str(), &days));
        cut = rv_panel_lower_bound(panel, days);
        if (cut == 0 || cut == rows) throw ConfigError("window.formation_end leaves an empty formation or trading window");
    }
    rv_panel *f = nullptr, *t = nullptr;
    check(rv_panel_slice(panel, 0, cut == 0 ? rows : cut, &f));
    Panel formation(f);
    check(rv_panel_slice(panel, cut, rows, &t));
    return {std::move(formation), Panel(t)};
}

Series combine(const rv_panel* panel, const std::vector<double>& coefficients) {
    rv_series* s = nullptr;
    check(rv_combine(panel, coefficients.data(), coefficients.size(), &s));
    return Series(s);
}

Series column(const rv_panel* panel, std::size_t asset) {
    rv_series* s = nullptr;
    check(rv_panel_column(panel, asset, &s));
    return Series(s);
}

void write_trades(const Context& ctx, const std::string& name, const rv_trades* trades, const rv_panel* dated) {
    std::vector<std::string> rows;
    for (std::size_t i = 0; i < rv_trades_count(trades); ++i) {
        std::size_t t = 0;
        int a = 0;
        check(rv_trades_get(trades, i, &t, &a));
        const std::string date = dated ? iso(rv_panel_date(dated, t)) : "";
        rows.push_back(std::to_string(t) + "," + date + "," + std::to_string(a));
    }
    ctx.write_csv(name, "index,date,action", rows);
}

Trades read_trades(const fs::path& path, const std::string& source) {
    std::ifstream in(path);
    if (!in) throw Failure(RV_ERR_MISSING_FILE, "cannot open trade list " + path.string(), 0, path.string());
    std::vector<std::size_t> times;
    std::vector<int> actions;
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line != "index,date,action")
                throw Failure(RV_ERR_MALFORMED_ROW, "expected header 'index,date,action'", line_no, path.string());
            header = true;
            continue;
        }
        std::stringstream ss(line);
        std::string idx, date, act;
        std::getline(ss, idx, ',');
        std::getline(ss, date, ',');
        std::getline(ss, act, ',');
        std::size_t t = 0;
        int a = 0;
        auto r1 = std::from_chars(idx.data(), idx.data() + idx.size(), t);
        auto r2 = std::from_chars(act.data(), act.data() + act.size(), a);
        if (r1.ec != std::errc{} || r2.ec != std::errc{} || r1.ptr != idx.data() + idx.size() ||
            r2.ptr != act.data() + act.size())
            throw Failure(RV_ERR_MALFORMED_ROW, "unparseable trade row", line_no, path.string());
        times.push_back(t);
        actions.push_back(a);
    }
    rv_trades* out = nullptr;
    check(rv_trades_create(times.data(), actions.data(), times.size(), source.c_str(), &out), path.string());
    return Trades(out);
}

}  // namespace cli
