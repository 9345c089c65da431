#pragma once

#include "ringsim/engine.hpp"

#include <string>
#include <vector>

namespace ringsim {

/// Shortest round-trip decimal form of x (std::to_chars), locale-independent
/// and identical across runs. Used for every number we write to disk.
std::string format_double(double x);

/// RFC-4180 field quoting: wraps in quotes when the field contains a comma,
/// quote, or newline; embedded quotes are doubled.
std::string csv_escape(const std::string& field);

/// One CSV line from already-escaped-as-needed fields, '\n' terminated.
std::string csv_row(const std::vector<std::string>& fields);

/// Splits one CSV record (no embedded newlines) honoring RFC-4180 quoting.
std::vector<std::string> csv_split(const std::string& line);

/// Whole-file helpers; write is atomic-ish (temp file + rename).
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& content);

/// Trajectory CSV: header t,lane,vid,class,x,v,a then one row per record.
std::string trajectory_csv(const std::vector<TrajRecord>& records);

/// Event CSV: header t,vid,kind,from_lane,to_lane,a_cur,a_new,a_fol with
/// kind codes LC, LC_VARIANCE, RAMP, OVERRIDE.
std::string events_csv(const EventLog& events);

/// Run metrics as a stable-key-order JSON document.
std::string metrics_json(const RunResult& result);

} // namespace ringsim
