#include "ringsim/config.hpp"

#include "ringsim/errors.hpp"
#include "ringsim/io.hpp"

#include <charconv>
#include <map>
#include <string>
#include <vector>

namespace ringsim {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const std::size_t pos = s.find(',', start);
        if (pos == std::string::npos) {
            out.push_back(trim(s.substr(start)));
            break;
        }
        out.push_back(trim(s.substr(start, pos - start)));
        start = pos + 1;
    }
    return out;
}

double parse_double(const std::string& key, const std::string& s) {
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used != s.size())
            throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw ConfigError("config: bad number for '" + key + "': " + s);
    }
}

long long parse_int(const std::string& key, const std::string& s) {
    long long v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError("config: bad integer for '" + key + "': " + s);
    return v;
}

std::uint64_t parse_uint(const std::string& key, const std::string& s) {
    std::uint64_t v = 0;
    const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
    if (res.ec != std::errc() || res.ptr != s.data() + s.size())
        throw ConfigError("config: bad unsigned integer for '" + key + "': " + s);
    return v;
}

bool parse_bool(const std::string& key, const std::string& s) {
    if (s == "true" || s == "on" || s == "1") return true;
    if (s == "false" || s == "off" || s == "0") return false;
    throw ConfigError("config: bad boolean for '" + key + "': " + s);
}

} // namespace

SimConfig parse_config(const std::string& text) {
    std::map<std::string, std::string> kv;
    std::size_t pos = 0;
    int line_no = 0;
    while (pos <= text.size()) {
        const std::size_t nl = text.find('\n', pos);
        std::string line = (nl == std::string::npos) ? text.substr(pos)
                                                     : text.substr(pos, nl - pos);
        pos = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
        ++line_no;

        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line.resize(hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty() || value.empty())
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": empty key or value");
        if (!kv.emplace(key, value).second)
            throw ConfigError("config: duplicate key '" + key + "'");
    }

    SimConfig cfg;

    // lanes first: list broadcasting depends on it
    if (auto it = kv.find("lanes"); it != kv.end()) {
        cfg.lanes = static_cast<int>(parse_int("lanes", it->second));
        kv.erase(it);
        if (cfg.lanes < 1)
            throw ConfigError("config: lanes must be >= 1");
        cfg.lane_lengths.assign(static_cast<std::size_t>(cfg.lanes), 240.0);
        cfg.n_per_lane.assign(static_cast<std::size_t>(cfg.lanes), 24);
    }

    for (const auto& [key, value] : kv) {
        if (key == "lane_lengths") {
            const auto parts = split_commas(value);
            std::vector<double> vals;
            for (const auto& p : parts) vals.push_back(parse_double(key, p));
            if (vals.size() == 1)
                cfg.lane_lengths.assign(static_cast<std::size_t>(cfg.lanes), vals[0]);
            else if (vals.size() == static_cast<std::size_t>(cfg.lanes))
                cfg.lane_lengths = vals;
            else
                throw ConfigError("config: lane_lengths needs 1 or lanes values");
        } else if (key == "n_per_lane") {
            const auto parts = split_commas(value);
            std::vector<int> vals;
            for (const auto& p : parts) vals.push_back(static_cast<int>(parse_int(key, p)));
            if (vals.size() == 1)
                cfg.n_per_lane.assign(static_cast<std::size_t>(cfg.lanes), vals[0]);
            else if (vals.size() == static_cast<std::size_t>(cfg.lanes))
                cfg.n_per_lane = vals;
            else
                throw ConfigError("config: n_per_lane needs 1 or lanes values");
        } else if (key == "dt") {
            cfg.dt = parse_double(key, value);
        } else if (key == "t_f") {
            cfg.t_f = parse_double(key, value);
        } else if (key == "model.alpha") {
            cfg.model.alpha = parse_double(key, value);
        } else if (key == "model.beta") {
            cfg.model.beta = parse_double(key, value);
        } else if (key == "model.l_v") {
            cfg.model.l_v = parse_double(key, value);
        } else if (key == "model.d_0") {
            cfg.model.d_0 = parse_double(key, value);
        } else if (key == "model.v_max") {
            cfg.model.v_max = parse_double(key, value);
        } else if (key == "model.a_cap_max") {
            cfg.model.a_cap_max = parse_double(key, value);
        } else if (key == "model.a_cap_min") {
            cfg.model.a_cap_min = parse_double(key, value);
        } else if (key == "idm_enabled") {
            cfg.idm_enabled = parse_bool(key, value);
        } else if (key == "idm.v0") {
            cfg.idm.v0 = parse_double(key, value);
        } else if (key == "idm.s0") {
            cfg.idm.s0 = parse_double(key, value);
        } else if (key == "idm.T") {
            cfg.idm.T = parse_double(key, value);
        } else if (key == "idm.a") {
            cfg.idm.a = parse_double(key, value);
        } else if (key == "idm.b") {
            cfg.idm.b = parse_double(key, value);
        } else if (key == "idm.delta") {
            cfg.idm.delta = parse_double(key, value);
        } else if (key == "lc.delta_i") {
            cfg.lc.delta_i = parse_double(key, value);
        } else if (key == "lc.delta_s") {
            cfg.lc.delta_s = parse_double(key, value);
        } else if (key == "lc.tau") {
            cfg.lc.tau = parse_double(key, value);
        } else if (key == "lc.iter_lc") {
            cfg.lc.iter_lc = static_cast<int>(parse_int(key, value));
        } else if (key == "av_enabled") {
            cfg.av_enabled = parse_bool(key, value);
        } else if (key == "av_lane") {
            cfg.av_lane = static_cast<int>(parse_int(key, value));
        } else if (key == "ctl.k") {
            cfg.ctl.k = parse_double(key, value);
        } else if (key == "ctl.v_min") {
            cfg.ctl.v_min = parse_double(key, value);
        } else if (key == "ctl.t_tr") {
            cfg.ctl.t_tr = parse_double(key, value);
        } else if (key == "ctl.gap_safe") {
            cfg.ctl.gap_safe = parse_double(key, value);
        } else if (key == "ctl.c1") {
            cfg.ctl.c1 = parse_double(key, value);
        } else if (key == "ctl.t1") {
            cfg.ctl.t1 = parse_double(key, value);
        } else if (key == "ctl.t2") {
            cfg.ctl.t2 = parse_double(key, value);
        } else if (key == "ctl.target_mode") {
            if (value == "headway")
                cfg.ctl.target_mode = TargetMode::Headway;
            else if (value == "paper_literal")
                cfg.ctl.target_mode = TargetMode::PaperLiteral;
            else
                throw ConfigError("config: ctl.target_mode must be headway or paper_literal");
        } else if (key == "collab_fraction") {
            cfg.collab_fraction = parse_double(key, value);
        } else if (key == "alpha_s") {
            cfg.alpha_s = parse_double(key, value);
        } else if (key == "beta_s") {
            cfg.beta_s = parse_double(key, value);
        } else if (key == "perturbation") {
            cfg.perturbation = parse_double(key, value);
        } else if (key == "seed") {
            cfg.seed = parse_uint(key, value);
        } else if (key == "sample_stride") {
            cfg.sample_stride = static_cast<int>(parse_int(key, value));
        } else if (key == "metrics_window") {
            cfg.metrics_window = parse_double(key, value);
        } else {
            throw ConfigError("config: unknown key '" + key + "'");
        }
    }

    cfg.validate();
    return cfg;
}

SimConfig load_config_file(const std::string& path) {
    return parse_config(read_text_file(path));
}

} // namespace ringsim
