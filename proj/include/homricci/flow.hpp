#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "homricci/metric.hpp"

namespace homricci {

/// Which right-hand side drives the parameter ODE.
///  - ClosedForm: the explicit five-equation systems (default).
///  - Oracle: -2 times the structure-constant Ricci tensor, slot by slot.
/// The two agree on so3r3 everywhere and on sl2c whenever nu = 0.
enum class RhsModel { ClosedForm, Oracle };

std::string_view to_string(RhsModel r);
RhsModel parse_rhs_model(std::string_view s);

/// d/dt (alpha, beta, gamma, mu, nu) under dg/dt = -2 Ric(g).
Vector5d flow_rhs(const MetricParams& m, RhsModel rhs = RhsModel::ClosedForm);

struct FlowOptions {
  double horizon = 1e3;
  double rtol = 1e-9;
  double atol = 1e-12;
  /// Relative collapse of lambda_min or alpha that counts as extinction.
  double extinction_tol = 1e-8;
  /// Spacing of the uniform monitor grid.
  double sample_stride = 1e-3;
  double scal_threshold = 1.0;
  RhsModel rhs = RhsModel::ClosedForm;

  void validate() const;
};

/// Relative distance from the x pivot below which the side monitor treats a
/// state as undecided.
inline constexpr double kSideDeadBand = 1e-8;

/// Accepted steps below this size, relative to max(1, t), end the run.
inline constexpr double kMinStepRelative = 1e-13;

struct FlowState {
  double t = 0.0;
  MetricParams m;
};

struct MonitorSample {
  double t = 0.0;
  MetricParams m;
  double eps = 0.0;         // tau / (beta gamma)
  double x = 0.0;           // beta/alpha (so3r3) or alpha/beta (sl2c)
  double scal = 0.0;
  double lambda_min = 0.0;
  double mu_over_sqrt_tau = 0.0;  // NaN unless sl2c with tau > 0
  double nu_sqrt_alpha = 0.0;     // NaN unless sl2c
};

MonitorSample make_sample(double t, const MetricParams& m);
double eps_of(const MetricParams& m);
double x_of(const MetricParams& m);

enum class Termination { Extinct, HorizonReached, StepCollapse };
std::string_view to_string(Termination t);

struct Trajectory {
  MetricParams initial;
  FlowOptions options;
  /// Accepted integrator steps, starting at t = 0. When Extinct, the last
  /// entry is the bisected state just past the extinction threshold.
  std::vector<FlowState> states;
  /// Uniform grid t = k * sample_stride, strictly before extinction.
  std::vector<MonitorSample> samples;
  Termination termination = Termination::HorizonReached;
  /// Time of the terminating event (extinction estimate, horizon, or the time
  /// at which the step size collapsed).
  double termination_time = 0.0;
  std::optional<double> extinction_time;
  std::optional<double> t_scal_threshold;
  std::size_t rejected_steps = 0;
  std::string diagnostics;
};

/// Adaptive Dormand–Prince 5(4) integration of flow_rhs from m0.
Trajectory integrate(const MetricParams& m0, const FlowOptions& opts = {});

enum class Verdict { Pass, Fail, NotApplicable };
std::string_view to_string(Verdict v);

struct MonitorResult {
  std::string name;
  Verdict verdict = Verdict::NotApplicable;
  double worst = 0.0;
  double tolerance = 0.0;
};

struct TrendEstimate {
  double window_start = 0.0;
  double window_end = 0.0;
  double x_last = 0.0;
  double x_drift = 0.0;    // dx/dt over the window
  double eps_last = 0.0;
  double eps_drift = 0.0;  // d eps/dt over the window
};

struct MonitorReport {
  std::vector<MonitorResult> checks;
  std::optional<TrendEstimate> trend;

  const MonitorResult* find(std::string_view name) const;
  /// True when no applicable check failed.
  bool all_pass() const;
};

/// Runtime checks of the monotonicity and conservation properties along the
/// accepted steps. Empty for trajectories with fewer than two states.
MonitorReport monitors(const Trajectory& traj);

struct IdentityResidual {
  std::string name;
  bool applicable = false;
  double max_rel_residual = 0.0;
  std::size_t samples_used = 0;
};

/// Compares analytic derivative identities against centered differences on
/// the uniform sample grid, away from the terminal time.
std::vector<IdentityResidual> identity_residuals(const Trajectory& traj);

/// First time scal >= threshold, linearly interpolated between samples.
std::optional<double> time_to_scal(const Trajectory& traj, double threshold);

}  // namespace homricci
