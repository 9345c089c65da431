#include "ringsim/io.hpp"

#include "ringsim/errors.hpp"

#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <system_error>

#include <json.hpp>

namespace ringsim {

const char* to_string(EventKind k) {
    switch (k) {
    case EventKind::LaneChange: return "LC";
    case EventKind::AvLaneChange: return "LC_VARIANCE";
    case EventKind::AvRamp: return "RAMP";
    case EventKind::AvOverride: return "OVERRIDE";
    }
    return "?";
}

std::string format_double(double x) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), x);
    return std::string(buf, res.ptr);
}

std::string csv_escape(const std::string& field) {
    if (field.find_first_of(",\"\n\r") == std::string::npos)
        return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}

std::string csv_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += csv_escape(fields[i]);
    }
    out += '\n';
    return out;
}

std::vector<std::string> csv_split(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c == '\r') {
            // tolerate CRLF input
        } else {
            cur += c;
        }
    }
    out.push_back(cur);
    return out;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw ConfigError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out)
            throw ConfigError("cannot write file: " + tmp);
        out << content;
        if (!out)
            throw ConfigError("write failed: " + tmp);
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec)
        throw ConfigError("rename failed for " + path + ": " + ec.message());
}

std::string trajectory_csv(const std::vector<TrajRecord>& records) {
    std::string out = "t,lane,vid,class,x,v,a\n";
    for (const auto& r : records) {
        out += csv_row({format_double(r.t), std::to_string(r.lane), std::to_string(r.vid),
                        to_string(r.klass), format_double(r.x), format_double(r.v),
                        format_double(r.a)});
    }
    return out;
}

std::string events_csv(const EventLog& events) {
    std::string out = "t,vid,kind,from_lane,to_lane,a_cur,a_new,a_fol\n";
    for (const auto& e : events) {
        out += csv_row({format_double(e.t), std::to_string(e.vid), to_string(e.kind),
                        std::to_string(e.from_lane), std::to_string(e.to_lane),
                        format_double(e.a_cur), format_double(e.a_new),
                        format_double(e.a_fol)});
    }
    return out;
}

std::string metrics_json(const RunResult& result) {
    nlohmann::ordered_json j;
    j["status"] = to_string(result.status);
    j["end_time"] = result.end_time;
    if (!result.error.empty()) j["error"] = result.error;
    j["valid"] = result.metrics.valid;
    j["window"] = result.metrics.window;
    j["mean_last_window_variance"] = result.metrics.mean_last_window_variance;
    j["mean_speed_per_lane"] = result.metrics.mean_speed_per_lane;
    j["total_lane_changes"] = result.metrics.total_lane_changes;
    j["av_lane_changes"] = result.metrics.av_lane_changes;
    // Non-finite audit values (a lone vehicle has no gap) serialize as null.
    j["audit"] = {
        {"min_gap", result.audit.min_gap},
        {"min_speed", result.audit.min_speed},
        {"count_conserved", result.audit.count_conserved},
        {"neg_speed_clamps", result.audit.neg_speed_clamps},
    };
    return j.dump(2) + "\n";
}

} // namespace ringsim
