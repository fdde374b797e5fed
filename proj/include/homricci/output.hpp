#pragma once

#include <array>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "homricci/flow.hpp"

namespace homricci {

inline constexpr std::array<const char*, 10> kCsvColumns = {
    "t", "alpha", "beta", "gamma", "mu", "nu", "eps", "x", "scal", "lambda_min"};

using CsvRow = std::array<double, 10>;

CsvRow csv_row(const MonitorSample& s);

/// %.17g, which round-trips every finite double; nan/inf spelled out.
std::string format_double(double v);

void write_trajectory_csv(std::ostream& out, const Trajectory& traj);
std::string trajectory_csv(const Trajectory& traj);

/// Parses CSV written by write_trajectory_csv. Throws IoError on a header
/// mismatch or a malformed row.
std::vector<CsvRow> parse_trajectory_csv(const std::string& text);

/// Summary document for a single trajectory (stable field names).
std::string summary_json(const Trajectory& traj, int indent = 2);

/// Writes to a sibling temporary file and renames it into place, so a
/// failed run never leaves a partial output behind.
void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents);

}  // namespace homricci
