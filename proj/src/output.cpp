#include "homricci/output.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <system_error>

#include "homricci/config.hpp"
#include "homricci/error.hpp"
#include "json_util.hpp"

namespace homricci {

CsvRow csv_row(const MonitorSample& s) {
  return {s.t,   s.m.alpha, s.m.beta, s.m.gamma, s.m.mu,
          s.m.nu, s.eps,    s.x,      s.scal,    s.lambda_min};
}

std::string format_double(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_trajectory_csv(std::ostream& out, const Trajectory& traj) {
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    out << (i ? "," : "") << kCsvColumns[i];
  }
  out << '\n';
  for (const auto& s : traj.samples) {
    const CsvRow row = csv_row(s);
    for (std::size_t i = 0; i < row.size(); ++i) {
      out << (i ? "," : "") << format_double(row[i]);
    }
    out << '\n';
  }
}

std::string trajectory_csv(const Trajectory& traj) {
  std::ostringstream os;
  write_trajectory_csv(os, traj);
  return os.str();
}

std::vector<CsvRow> parse_trajectory_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line)) throw IoError("empty trajectory CSV");
  std::string expected;
  for (std::size_t i = 0; i < kCsvColumns.size(); ++i) {
    expected += (i ? "," : "");
    expected += kCsvColumns[i];
  }
  if (line != expected) throw IoError("unexpected CSV header '" + line + "'");

  std::vector<CsvRow> rows;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    CsvRow row{};
    std::size_t col = 0, start = 0;
    for (;;) {
      const auto comma = line.find(',', start);
      const std::string cell =
          line.substr(start, comma == std::string::npos ? std::string::npos
                                                        : comma - start);
      if (col >= row.size()) {
        throw IoError("CSV line " + std::to_string(lineno) + ": too many columns");
      }
      if (cell == "nan") {
        row[col] = std::nan("");
      } else if (cell == "inf" || cell == "-inf") {
        row[col] = cell[0] == '-' ? -HUGE_VAL : HUGE_VAL;
      } else {
        const auto v = parse_double(cell);
        if (!v) {
          throw IoError("CSV line " + std::to_string(lineno) + ": bad number '" +
                        cell + "'");
        }
        row[col] = *v;
      }
      ++col;
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (col != row.size()) {
      throw IoError("CSV line " + std::to_string(lineno) + ": expected " +
                    std::to_string(row.size()) + " columns");
    }
    rows.push_back(row);
  }
  return rows;
}

namespace detail {

json params_json(const MetricParams& m) {
  return {{"case", std::string(to_string(m.model_case))},
          {"alpha", m.alpha},
          {"beta", m.beta},
          {"gamma", m.gamma},
          {"mu", m.mu},
          {"nu", m.nu}};
}

json options_json(const FlowOptions& o) {
  return {{"horizon", o.horizon},
          {"rtol", o.rtol},
          {"atol", o.atol},
          {"extinction_tol", o.extinction_tol},
          {"sample_stride", o.sample_stride},
          {"scal_threshold", number(o.scal_threshold)},
          {"rhs", std::string(to_string(o.rhs))}};
}

json monitors_json(const MonitorReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"verdict", std::string(to_string(c.verdict))},
                      {"worst", number(c.worst)},
                      {"tolerance", c.tolerance}});
  }
  return checks;
}

json identities_json(const std::vector<IdentityResidual>& ids) {
  json out = json::array();
  for (const auto& r : ids) {
    out.push_back({{"name", r.name},
                   {"applicable", r.applicable},
                   {"max_rel_residual",
                    r.applicable ? number(r.max_rel_residual) : json(nullptr)},
                   {"samples_used", r.samples_used}});
  }
  return out;
}

json trajectory_json(const Trajectory& traj) {
  const MonitorReport report = monitors(traj);
  json trend = nullptr;
  if (report.trend) {
    const auto& t = *report.trend;
    trend = {{"window_start", t.window_start},
             {"window_end", t.window_end},
             {"x_last", number(t.x_last)},
             {"x_drift", number(t.x_drift)},
             {"eps_last", number(t.eps_last)},
             {"eps_drift", number(t.eps_drift)}};
  }
  const MetricParams& last = traj.states.back().m;
  return {{"initial", params_json(traj.initial)},
          {"options", options_json(traj.options)},
          {"termination", std::string(to_string(traj.termination))},
          {"termination_time", traj.termination_time},
          {"extinction_time", optional_number(traj.extinction_time)},
          {"t_g", optional_number(traj.t_scal_threshold)},
          {"final_state", params_json(last)},
          {"accepted_steps", traj.states.size() - 1},
          {"rejected_steps", traj.rejected_steps},
          {"samples", traj.samples.size()},
          {"monitors_pass", report.all_pass()},
          {"monitors", monitors_json(report)},
          {"trend", trend},
          {"identity_residuals", identities_json(identity_residuals(traj))},
          {"diagnostics", traj.diagnostics}};
}

}  // namespace detail

std::string summary_json(const Trajectory& traj, int indent) {
  return detail::trajectory_json(traj).dump(indent) + "\n";
}

void write_file_atomic(const std::filesystem::path& path,
                       const std::string& contents) {
  namespace fs = std::filesystem;
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + tmp.string() + "' for writing");
    out << contents;
    out.flush();
    if (!out) {
      std::error_code ec;
      fs::remove(tmp, ec);
      throw IoError("error writing '" + tmp.string() + "'");
    }
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) {
    fs::remove(tmp, ec);
    throw IoError("cannot move output into place at '" + path.string() + "'");
  }
}

}  // namespace homricci
