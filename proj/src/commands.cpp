#include "homricci/commands.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <thread>

#include "homricci/error.hpp"
#include "homricci/output.hpp"
#include "json_util.hpp"

namespace homricci {

namespace {

void require_writable_parent(const std::filesystem::path& p) {
  const auto parent = p.has_parent_path() ? p.parent_path()
                                          : std::filesystem::path(".");
  std::error_code ec;
  if (!std::filesystem::is_directory(parent, ec)) {
    throw IoError("output directory '" + parent.string() + "' does not exist");
  }
}

SweepRecord make_record(std::size_t index, const Trajectory& traj) {
  SweepRecord r;
  r.index = index;
  r.initial = traj.initial;
  r.termination = traj.termination;
  r.termination_time = traj.termination_time;
  r.extinction_time = traj.extinction_time;
  r.t_g = traj.t_scal_threshold;
  r.scal_crossing_before_extinction =
      r.t_g && r.extinction_time && *r.t_g < *r.extinction_time;
  r.monitors = monitors(traj);
  r.accepted_steps = traj.states.size() - 1;
  r.rejected_steps = traj.rejected_steps;
  r.diagnostics = traj.diagnostics;
  return r;
}

}  // namespace

Trajectory cmd_run(const RunConfig& cfg, const std::filesystem::path& out_csv,
                   const std::filesystem::path& out_json) {
  require_writable_parent(out_csv);
  require_writable_parent(out_json);
  Trajectory traj = integrate(cfg.initial, cfg.flow);
  const std::string csv = trajectory_csv(traj);
  const std::string json = summary_json(traj);
  write_file_atomic(out_csv, csv);
  try {
    write_file_atomic(out_json, json);
  } catch (...) {
    std::error_code ec;
    std::filesystem::remove(out_csv, ec);
    throw;
  }
  return traj;
}

SweepResult run_sweep(const SweepConfig& cfg, bool parallel) {
  const std::vector<MetricParams> points = cfg.points();
  SweepResult result;
  result.records.resize(points.size());

  auto work = [&](std::size_t i) {
    result.records[i] = make_record(i, integrate(points[i], cfg.flow));
  };

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const std::size_t workers =
      parallel ? std::min<std::size_t>(hw, points.size()) : 1;
  if (workers <= 1) {
    for (std::size_t i = 0; i < points.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < points.size(); i = next++) work(i);
        } catch (...) {
          errors[w] = std::current_exception();
          next = points.size();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  for (const auto& r : result.records) {
    switch (r.termination) {
      case Termination::Extinct:
        ++result.extinct;
        break;
      case Termination::HorizonReached:
        ++result.horizon_reached;
        break;
      case Termination::StepCollapse:
        ++result.step_collapse;
        break;
    }
    if (!r.monitors.all_pass()) ++result.monitor_failures;
    if (r.scal_crossing_before_extinction) ++result.scal_crossings;
  }
  return result;
}

std::string sweep_json(const SweepConfig& cfg, const SweepResult& result) {
  using detail::json;
  json records = json::array();
  for (const auto& r : result.records) {
    json verdicts = json::object();
    for (const auto& c : r.monitors.checks) {
      verdicts[c.name] = std::string(to_string(c.verdict));
    }
    records.push_back(
        {{"index", r.index},
         {"initial", detail::params_json(r.initial)},
         {"termination", std::string(to_string(r.termination))},
         {"termination_time", r.termination_time},
         {"extinction_time", detail::optional_number(r.extinction_time)},
         {"t_g", detail::optional_number(r.t_g)},
         {"scal_crossing_before_extinction", r.scal_crossing_before_extinction},
         {"monitors_pass", r.monitors.all_pass()},
         {"monitors", verdicts},
         {"accepted_steps", r.accepted_steps},
         {"rejected_steps", r.rejected_steps},
         {"diagnostics", r.diagnostics}});
  }
  json doc = {
      {"case", std::string(to_string(cfg.model_case))},
      {"mode", cfg.mode == SweepMode::Grid ? "grid" : "random"},
      {"seed", cfg.seed},
      {"tie_gamma_to_beta", cfg.tie_gamma_to_beta},
      {"options", detail::options_json(cfg.flow)},
      {"count", result.records.size()},
      {"counts",
       {{"Extinct", result.extinct},
        {"HorizonReached", result.horizon_reached},
        {"StepCollapse", result.step_collapse}}},
      {"monitor_failures", result.monitor_failures},
      {"scal_crossings", result.scal_crossings},
      {"records", records}};
  return doc.dump(2) + "\n";
}

SweepResult cmd_sweep(const SweepConfig& cfg,
                      const std::filesystem::path& out_json, bool parallel) {
  require_writable_parent(out_json);
  SweepResult result = run_sweep(cfg, parallel);
  write_file_atomic(out_json, sweep_json(cfg, result));
  return result;
}

}  // namespace homricci
