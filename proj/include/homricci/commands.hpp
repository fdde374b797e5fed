#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "homricci/config.hpp"
#include "homricci/flow.hpp"

namespace homricci {

/// Process exit codes of the command-line surface.
enum ExitCode : int { kExitOk = 0, kExitConfig = 1, kExitVerification = 2 };

/// Integrates the configured flow and writes the CSV and summary JSON. Both
/// files are produced or neither is.
Trajectory cmd_run(const RunConfig& cfg, const std::filesystem::path& out_csv,
                   const std::filesystem::path& out_json);

struct SweepRecord {
  std::size_t index = 0;
  MetricParams initial;
  Termination termination = Termination::HorizonReached;
  double termination_time = 0.0;
  std::optional<double> extinction_time;
  std::optional<double> t_g;
  /// t_g exists and precedes the extinction time.
  bool scal_crossing_before_extinction = false;
  MonitorReport monitors;
  std::size_t accepted_steps = 0;
  std::size_t rejected_steps = 0;
  std::string diagnostics;
};

struct SweepResult {
  std::vector<SweepRecord> records;  // in sweep order
  std::size_t extinct = 0;
  std::size_t horizon_reached = 0;
  std::size_t step_collapse = 0;
  std::size_t monitor_failures = 0;
  std::size_t scal_crossings = 0;
};

/// Integrates every sweep point. With `parallel`, points are distributed over
/// hardware threads; records come back in sweep order either way.
SweepResult run_sweep(const SweepConfig& cfg, bool parallel = false);
std::string sweep_json(const SweepConfig& cfg, const SweepResult& result);
SweepResult cmd_sweep(const SweepConfig& cfg,
                      const std::filesystem::path& out_json,
                      bool parallel = false);

struct VerifyCheck {
  std::string name;
  double tolerance = 0.0;
  double worst = 0.0;
  std::size_t cases = 0;
  bool pass = true;
  /// Offending parameters of the worst case, when it failed.
  std::string detail;
};

struct VerifyReport {
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  std::vector<VerifyCheck> checks;

  bool pass() const;
  std::string text() const;
};

inline constexpr std::size_t kDefaultVerifySamples = 1000;
inline constexpr std::uint64_t kDefaultVerifySeed = 20240611;

/// Structural checks always; randomized oracle, gauge, frame and flow checks
/// on `samples` instances per case drawn from `seed`.
VerifyReport cmd_verify(std::size_t samples = kDefaultVerifySamples,
                        std::uint64_t seed = kDefaultVerifySeed);

/// Log-uniform alpha, beta, gamma in [0.1, 10] and (mu, nu) uniform on the
/// disc tau < 0.9 beta gamma, drawn with a platform-independent generator.
class ParamSampler {
 public:
  explicit ParamSampler(std::uint64_t seed) : rng_(seed) {}
  MetricParams draw(ModelCase c);
  double uniform();  // [0, 1)

 private:
  std::mt19937_64 rng_;
};

}  // namespace homricci
