#include "revert/qtable_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "revert/error.hpp"

namespace revert {

namespace {

using nlohmann::json;

const char* encoding_name(Encoding e) { return e == Encoding::Percent ? "pct" : "norm-diff"; }

Encoding encoding_from(const std::string& s) {
    if (s == "pct") return Encoding::Percent;
    if (s == "norm-diff") return Encoding::NormDiff;
    throw Error(Errc::InvalidArgument, "unknown encoding '" + s + "'");
}

std::string read_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw Error(Errc::MissingFile, "cannot open " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

std::string format_real(double v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc{}) throw Error(Errc::Io, "number formatting failed");
    return std::string(buf, ptr);
}

std::string rl_config_to_json(const RLConfig& c) {
    json j;
    j["lookback"] = c.lookback;
    j["move_threshold"] = c.move_threshold;
    j["learning_rate"] = c.learning_rate;
    j["discount"] = c.discount;
    j["epsilon"] = c.epsilon;
    j["episodes"] = c.episodes;
    j["transaction_cost"] = c.transaction_cost;
    j["interest_rate"] = c.interest_rate;
    j["seed"] = c.seed;
    j["encoding"] = encoding_name(c.encoding);
    j["encoding_scale"] = c.encoding_scale;
    return j.dump(2);
}

RLConfig rl_config_from_json(const std::string& text) {
    RLConfig c;
    try {
        const json j = json::parse(text);
        c.lookback = j.value("lookback", c.lookback);
        c.move_threshold = j.value("move_threshold", c.move_threshold);
        c.learning_rate = j.value("learning_rate", c.learning_rate);
        c.discount = j.value("discount", c.discount);
        c.epsilon = j.value("epsilon", c.epsilon);
        c.episodes = j.value("episodes", c.episodes);
        c.transaction_cost = j.value("transaction_cost", c.transaction_cost);
        c.interest_rate = j.value("interest_rate", c.interest_rate);
        c.seed = j.value("seed", c.seed);
        c.encoding = encoding_from(j.value("encoding", std::string("pct")));
        c.encoding_scale = j.value("encoding_scale", c.encoding_scale);
    } catch (const json::exception& e) {
        throw Error(Errc::InvalidArgument, std::string("bad RL config JSON: ") + e.what());
    }
    c.validate();
    return c;
}

void save_qtable(const QTable& table, const RLConfig& config, const std::filesystem::path& csv_path,
                 const std::filesystem::path& json_path, const std::string& comment) {
    std::ofstream csv(csv_path, std::ios::binary);
    if (!csv) throw Error(Errc::Io, "cannot write " + csv_path.string());
    if (!comment.empty()) csv << "# " << comment << '\n';
    csv << "state,action,value,visits\n";
    for (std::size_t s = 0; s < table.states(); ++s)
        for (Action a : legal_actions(table.position_of(s)))
            csv << s << ',' << static_cast<int>(a) << ',' << format_real(table.value(s, a)) << ',' << table.visits(s, a)
                << '\n';

    std::ofstream js(json_path, std::ios::binary);
    if (!js) throw Error(Errc::Io, "cannot write " + json_path.string());
    js << rl_config_to_json(config) << '\n';
}

LoadedAgent load_qtable(const std::filesystem::path& csv_path, const std::filesystem::path& json_path) {
    RLConfig config = rl_config_from_json(read_file(json_path));
    QTable table(config.lookback);

    std::istringstream in(read_file(csv_path));
    std::string line;
    std::size_t line_no = 0;
    bool header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        if (!header) {
            if (line != "state,action,value,visits")
                throw Error(Errc::MalformedRow, csv_path.string() + ": bad q-table header", line_no);
            header = true;
            continue;
        }
        std::istringstream row(line);
        std::string f[4];
        for (auto& field : f)
            if (!std::getline(row, field, ','))
                throw Error(Errc::MalformedRow, csv_path.string() + ": expected 4 fields", line_no);
        try {
            const std::size_t s = std::stoull(f[0]);
            const int a = std::stoi(f[1]);
            if (a < -1 || a > 1) throw Error(Errc::MalformedRow, "bad action", line_no);
            const Action act = static_cast<Action>(a);
            if (s >= table.states() || !is_legal(table.position_of(s), act))
                throw Error(Errc::MalformedRow, csv_path.string() + ": state/action not in table", line_no);
            table.set_value(s, act, std::stod(f[2]));
            table.set_visits(s, act, std::stoull(f[3]));
        } catch (const std::logic_error&) {
            throw Error(Errc::MalformedRow, csv_path.string() + ": unparseable row", line_no);
        }
    }
    if (!header) throw Error(Errc::MalformedRow, csv_path.string() + ": missing header");
    return {std::move(table), config};
}

}  // namespace revert
