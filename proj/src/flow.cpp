#include "homricci/flow.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "homricci/dopri5.hpp"
#include "homricci/error.hpp"
#include "homricci/ricci.hpp"

namespace homricci {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

Vector5d nan_vector() { return Vector5d::Constant(kNaN); }

Vector5d closed_form_rhs(const MetricParams& m) {
  const double a = m.alpha, b = m.beta, g = m.gamma, mu = m.mu, nu = m.nu;
  const double d = m.block_det();
  const double a2 = a * a, b2 = b * b;
  Vector5d out;
  if (m.model_case == ModelCase::So3R3) {
    out(0) = 2.0 * (b2 - a2) / d - 4.0 * a2 * nu * nu / (d * d);
    out(1) = b / a * (a2 - b2) / d;
    out(2) = -4.0 + 2.0 * b / a + g / a * (a2 - b2) / d;
    out(3) = mu / (a * d) * (a2 - b2);
    out(4) = -nu / (a * d) * (a2 + b2);
  } else {
    const double tau = m.tau();
    out(0) = 2.0 * (16.0 * b * g - a2) / d;
    out(1) = -b * (16.0 * tau - a2) / (a * d);
    out(2) = -g * (16.0 * tau - a2) / (a * d);
    out(3) = 8.0 - mu / (a * d) * (-a2 + 16.0 * b * g);
    out(4) = -nu / (a * d) * (-a2 + 16.0 * b * g);
  }
  return out;
}

Vector5d oracle_rhs(const MetricParams& m) {
  return -2.0 * RicciComponents::from_matrix(m.model_case, ricci_oracle(m))
                    .as_vector();
}

/// NaN for states outside the metric cone, so trial steps leaving it are
/// rejected by the step controller.
Vector5d rhs_or_nan(const MetricParams& m, RhsModel rhs) {
  if (!m.is_valid()) return nan_vector();
  return rhs == RhsModel::ClosedForm ? closed_form_rhs(m) : oracle_rhs(m);
}

}  // namespace

std::string_view to_string(RhsModel r) {
  return r == RhsModel::ClosedForm ? "closed_form" : "oracle";
}

RhsModel parse_rhs_model(std::string_view s) {
  if (s == "closed_form") return RhsModel::ClosedForm;
  if (s == "oracle") return RhsModel::Oracle;
  throw InvalidParams("unknown rhs model '" + std::string(s) +
                      "' (expected closed_form or oracle)");
}

Vector5d flow_rhs(const MetricParams& m, RhsModel rhs) {
  m.validate();
  return rhs == RhsModel::ClosedForm ? closed_form_rhs(m) : oracle_rhs(m);
}

void FlowOptions::validate() const {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  if (!(std::isfinite(horizon) && horizon >= 0.0)) {
    throw InvalidParams("horizon must be finite and non-negative");
  }
  if (!positive(rtol) || !positive(atol)) {
    throw InvalidParams("rtol and atol must be positive");
  }
  if (!positive(extinction_tol) || extinction_tol >= 1.0) {
    throw InvalidParams("extinction_tol must lie in (0, 1)");
  }
  if (!positive(sample_stride)) {
    throw InvalidParams("sample_stride must be positive");
  }
  if (std::isnan(scal_threshold)) {
    throw InvalidParams("scal_threshold must not be NaN");
  }
}

double eps_of(const MetricParams& m) { return m.tau() / (m.beta * m.gamma); }

double x_of(const MetricParams& m) {
  return m.model_case == ModelCase::So3R3 ? m.beta / m.alpha
                                          : m.alpha / m.beta;
}

MonitorSample make_sample(double t, const MetricParams& m) {
  MonitorSample s;
  s.t = t;
  s.m = m;
  s.eps = eps_of(m);
  s.x = x_of(m);
  s.lambda_min = lambda_min(m);
  s.scal = m.is_valid() ? scalar_curvature(m) : kNaN;
  if (m.model_case == ModelCase::Sl2C) {
    const double tau = m.tau();
    s.mu_over_sqrt_tau = tau > 0.0 ? m.mu / std::sqrt(tau) : kNaN;
    s.nu_sqrt_alpha = m.nu * std::sqrt(m.alpha);
  } else {
    s.mu_over_sqrt_tau = kNaN;
    s.nu_sqrt_alpha = kNaN;
  }
  return s;
}

std::string_view to_string(Termination t) {
  switch (t) {
    case Termination::Extinct:
      return "Extinct";
    case Termination::HorizonReached:
      return "HorizonReached";
    case Termination::StepCollapse:
      return "StepCollapse";
  }
  return "?";
}

Trajectory integrate(const MetricParams& m0, const FlowOptions& opts) {
  m0.validate();
  opts.validate();

  using Step = ode::Dopri5Step<5>;
  const ModelCase mc = m0.model_case;
  const RhsModel rhs_model = opts.rhs;
  auto f = [mc, rhs_model](double, const Vector5d& y) {
    return rhs_or_nan(MetricParams::from_vector(mc, y), rhs_model);
  };

  const double lambda_floor = opts.extinction_tol * lambda_min(m0);
  const double alpha_floor = opts.extinction_tol * m0.alpha;
  auto alive = [&](const Vector5d& y) {
    if (!y.allFinite()) return false;
    const MetricParams m = MetricParams::from_vector(mc, y);
    return m.is_valid() && m.alpha >= alpha_floor &&
           lambda_min(m) >= lambda_floor;
  };

  Trajectory traj;
  traj.initial = m0;
  traj.options = opts;
  traj.states.push_back({0.0, m0});
  traj.samples.push_back(make_sample(0.0, m0));

  const double stride = opts.sample_stride;
  std::size_t next_sample = 1;
  auto emit_samples = [&](const Step& s, double t_end, bool inclusive) {
    for (;;) {
      const double ts = static_cast<double>(next_sample) * stride;
      if (ts > opts.horizon) break;
      if (inclusive ? ts > t_end * (1.0 + 1e-15) : ts >= t_end) break;
      const double theta = std::clamp((ts - s.t0) / s.h, 0.0, 1.0);
      traj.samples.push_back(
          make_sample(ts, MetricParams::from_vector(mc, s.at(theta))));
      ++next_sample;
    }
  };

  double t = 0.0;
  Vector5d y = m0.as_vector();
  Vector5d k1 = f(t, y);

  auto finish = [&](Termination kind, double when, std::string diag) {
    traj.termination = kind;
    traj.termination_time = when;
    traj.diagnostics = std::move(diag);
    if (kind == Termination::Extinct) traj.extinction_time = when;
    traj.t_scal_threshold = time_to_scal(traj, opts.scal_threshold);
    return traj;
  };

  if (opts.horizon == 0.0) {
    return finish(Termination::HorizonReached, 0.0, "");
  }
  if (!k1.allFinite()) {
    return finish(Termination::StepCollapse, 0.0,
                  "non-finite derivative at the initial state");
  }

  double h = std::min(opts.horizon,
                      0.01 * std::max(y.cwiseAbs().maxCoeff(), 1e-12) /
                          std::max(k1.cwiseAbs().maxCoeff(), 1e-12));
  h = std::max(h, 1e-10);

  while (t < opts.horizon) {
    h = std::min(h, opts.horizon - t);
    if (h < kMinStepRelative * std::max(1.0, t)) {
      std::ostringstream os;
      os.precision(17);
      os << "step size collapsed to " << h << " at t=" << t;
      return finish(Termination::StepCollapse, t, os.str());
    }

    const Step s = ode::dopri5_step<5>(f, t, y, k1, h);
    const bool finite = s.y1.allFinite() && s.k7.allFinite() &&
                        s.err.allFinite();
    const double err = finite ? ode::error_norm(s, opts.rtol, opts.atol)
                              : std::numeric_limits<double>::infinity();
    if (!(err <= 1.0)) {
      ++traj.rejected_steps;
      h *= finite ? std::max(0.2, 0.9 * std::pow(err, -0.2)) : 0.25;
      continue;
    }

    if (!alive(s.y1)) {
      // Bracket the threshold crossing on the dense interpolant.
      double lo = 0.0, hi = 1.0;
      for (int it = 0; it < 200 && (hi - lo) * h > 1e-15 * std::max(1.0, t);
           ++it) {
        const double mid = 0.5 * (lo + hi);
        (alive(s.at(mid)) ? lo : hi) = mid;
      }
      const double t_ext = t + hi * h;
      emit_samples(s, t_ext, false);
      traj.states.push_back(
          {t_ext, MetricParams::from_vector(mc, s.at(hi))});
      return finish(Termination::Extinct, t_ext, "");
    }

    const double t_new = (opts.horizon - (t + h) <= 1e-15 * opts.horizon)
                             ? opts.horizon
                             : t + h;
    emit_samples(s, t_new, true);
    t = t_new;
    y = s.y1;
    k1 = s.k7;
    traj.states.push_back({t, MetricParams::from_vector(mc, y)});
    h *= err == 0.0 ? 5.0 : std::clamp(0.9 * std::pow(err, -0.2), 0.2, 5.0);
  }
  return finish(Termination::HorizonReached, opts.horizon, "");
}

std::string_view to_string(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "fail";
    case Verdict::NotApplicable:
      return "n/a";
  }
  return "?";
}

const MonitorResult* MonitorReport::find(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

bool MonitorReport::all_pass() const {
  return std::none_of(checks.begin(), checks.end(), [](const MonitorResult& c) {
    return c.verdict == Verdict::Fail;
  });
}

MonitorReport monitors(const Trajectory& traj) {
  MonitorReport report;
  const auto& st = traj.states;
  if (st.size() < 2) return report;

  const MetricParams& m0 = traj.initial;
  const bool so3 = m0.model_case == ModelCase::So3R3;
  auto result = [&report](std::string name, bool applicable, bool pass,
                          double worst, double tol) {
    report.checks.push_back(
        {std::move(name),
         applicable ? (pass ? Verdict::Pass : Verdict::Fail)
                    : Verdict::NotApplicable,
         applicable ? worst : 0.0, tol});
  };

  {
    // Largest eps_{k+1} - eps_k in the mu = 0 gauge; strictly decreasing
    // means this is < 0.
    // gauge_reduce sends gamma to gamma - mu^2/beta and tau to nu^2.
    const bool applicable = so3 && m0.nu != 0.0;
    auto eps_reduced = [](const MetricParams& m) {
      return m.nu * m.nu / (m.beta * m.gamma - m.mu * m.mu);
    };
    double worst = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; applicable && k < st.size(); ++k) {
      worst = std::max(worst, eps_reduced(st[k].m) - eps_reduced(st[k - 1].m));
    }
    result("eps_strictly_decreasing", applicable, worst < 0.0, worst, 0.0);
  }
  {
    const double pivot = so3 ? 1.0 : 4.0;
    // Within the dead band the side is integration noise, not a crossing.
    const double band = kSideDeadBand * pivot;
    int changes = 0;
    int last_sign = 0;
    for (const auto& s : st) {
      const double d = x_of(s.m) - pivot;
      const double v = std::abs(d) <= band ? 0.0 : d;
      const int sign = (v > 0.0) - (v < 0.0);
      if (sign == 0) continue;
      if (last_sign != 0 && sign != last_sign) ++changes;
      last_sign = sign;
    }
    result("x_side_changes_at_most_once", true, changes <= 1,
           static_cast<double>(changes), 1.0);
  }
  {
    constexpr double tol = 1e-12;
    double worst = 0.0;  // largest decrease
    double prev = kNaN;
    for (const auto& s : st) {
      const double tau = s.m.tau();
      if (!(tau > 0.0)) continue;
      const double r = s.m.mu / std::sqrt(tau);
      if (!std::isnan(prev)) worst = std::max(worst, prev - r);
      prev = r;
    }
    result("mu_over_sqrt_tau_nondecreasing", !so3, worst <= tol, worst, tol);
  }
  {
    constexpr double tol = 1e-6;
    const double ref = m0.nu * std::sqrt(m0.alpha);
    double worst = 0.0;
    for (const auto& s : st) {
      const double v = s.m.nu * std::sqrt(s.m.alpha);
      const double dev = ref == 0.0 ? std::abs(v) : std::abs(v - ref) / std::abs(ref);
      worst = std::max(worst, dev);
    }
    result("nu_sqrt_alpha_conserved", !so3, worst <= tol, worst, tol);
  }
  {
    constexpr double tol = 1e-10;
    double worst = 0.0;
    for (const auto& s : st) worst = std::max(worst, std::abs(s.m.mu));
    result("mu_zero_preserved", so3 && m0.mu == 0.0, worst <= tol, worst, tol);
  }
  {
    constexpr double tol = 1e-8;
    double worst = 0.0;
    for (const auto& s : st) {
      worst = std::max(worst, std::abs(s.m.beta - s.m.gamma) / s.m.beta);
    }
    result("beta_equals_gamma_preserved", !so3 && m0.beta == m0.gamma,
           worst <= tol, worst, tol);
  }

  // Last-window trend of x and eps; finite-horizon estimates, not verdicts.
  const double t_end = st.back().t;
  const double window_start = 0.9 * t_end;
  std::size_t first = st.size() - 1;
  while (first > 0 && st[first - 1].t >= window_start) --first;
  if (first == st.size() - 1 && first > 0) --first;
  const auto& a = st[first];
  const auto& b = st.back();
  if (b.t > a.t) {
    TrendEstimate tr;
    tr.window_start = a.t;
    tr.window_end = b.t;
    tr.x_last = x_of(b.m);
    tr.eps_last = eps_of(b.m);
    tr.x_drift = (x_of(b.m) - x_of(a.m)) / (b.t - a.t);
    tr.eps_drift = (eps_of(b.m) - eps_of(a.m)) / (b.t - a.t);
    report.trend = tr;
  }
  return report;
}

namespace {

struct IdentitySpec {
  const char* name;
  bool applicable;
  double (*quantity)(const MetricParams&);
  double (*rate)(const MetricParams&);
};

// so3r3 identities; x = beta/alpha, eps = tau/(beta gamma).
double q_gamma_over_beta(const MetricParams& m) { return m.gamma / m.beta; }
double r_gamma_over_beta(const MetricParams& m) {
  return 2.0 / m.beta * (m.beta / m.alpha - 2.0);
}
double q_eps(const MetricParams& m) { return eps_of(m); }
double r_eps(const MetricParams& m) {
  const double e = eps_of(m), x = x_of(m);
  return e * (-2.0 * m.alpha / ((1.0 - e) * m.beta * m.gamma) *
              ((1.0 - e) * x * x - (2.0 * e - 2.0) * x + 2.0));
}
double r_eps_alt_sign(const MetricParams& m) {
  const double e = eps_of(m), x = x_of(m);
  return e * (-2.0 * m.alpha / ((1.0 - e) * m.beta * m.gamma) *
              ((1.0 - e) * x * x + (2.0 * e - 2.0) * x + 2.0));
}
double q_x(const MetricParams& m) { return x_of(m); }
double r_x_so3(const MetricParams& m) {
  const double e = eps_of(m), x = x_of(m);
  return 3.0 * m.beta / m.block_det() *
         (4.0 * e / (3.0 * (1.0 - e)) - (x * x - 1.0));
}
double q_tau_over_beta2(const MetricParams& m) {
  return m.tau() / (m.beta * m.beta);
}
double r_tau_over_beta2(const MetricParams& m) {
  return q_tau_over_beta2(m) * (-4.0 * m.alpha / m.block_det());
}

// sl2c identities; x = alpha/beta.
double r_x_sl2c(const MetricParams& m) {
  const double e = eps_of(m), x = x_of(m);
  return x * m.beta * m.beta / (m.alpha * (1.0 - e)) *
         (16.0 * e + 32.0 - 3.0 * x * x);
}
double r_x_sl2c_eps_squared(const MetricParams& m) {
  const double e = eps_of(m), x = x_of(m);
  return x * m.beta * m.beta / (m.alpha * (1.0 - e * e)) *
         (16.0 * e + 32.0 - 3.0 * x * x);
}
double r_x_sl2c_unscaled(const MetricParams& m) {
  const double e = eps_of(m), x = x_of(m);
  return x / (m.alpha * (1.0 - e)) * (16.0 * e + 32.0 - 3.0 * x * x);
}

}  // namespace

std::vector<IdentityResidual> identity_residuals(const Trajectory& traj) {
  const MetricParams& m0 = traj.initial;
  std::vector<IdentitySpec> specs;
  if (m0.model_case == ModelCase::So3R3) {
    const bool mu_free = m0.mu == 0.0;
    specs = {
        {"gamma_over_beta_rate", true, q_gamma_over_beta, r_gamma_over_beta},
        {"eps_rate", mu_free, q_eps, r_eps},
        {"eps_rate_alt_sign", mu_free, q_eps, r_eps_alt_sign},
        {"x_rate", mu_free, q_x, r_x_so3},
        {"tau_over_beta2_rate", mu_free, q_tau_over_beta2, r_tau_over_beta2},
    };
  } else {
    const bool tied = m0.beta == m0.gamma;
    specs = {
        {"x_rate", tied, q_x, r_x_sl2c},
        {"x_rate_eps_squared", tied, q_x, r_x_sl2c_eps_squared},
        {"x_rate_unscaled", tied, q_x, r_x_sl2c_unscaled},
    };
  }

  const auto& sm = traj.samples;
  const double t_end = traj.termination_time;
  const double cutoff =
      traj.termination == Termination::HorizonReached
          ? t_end
          : t_end - std::max(0.1 * t_end, 100.0 * traj.options.sample_stride);

  std::vector<IdentityResidual> out;
  for (const auto& spec : specs) {
    IdentityResidual r;
    r.name = spec.name;
    r.applicable = spec.applicable;
    if (!spec.applicable) {
      out.push_back(r);
      continue;
    }
    std::vector<double> fd, an;
    // Fourth-order centered stencil on the uniform grid.
    for (std::size_t k = 2; k + 2 < sm.size(); ++k) {
      if (sm[k + 2].t > cutoff) break;
      const double h = (sm[k + 2].t - sm[k - 2].t) / 4.0;
      fd.push_back((-spec.quantity(sm[k + 2].m) +
                    8.0 * spec.quantity(sm[k + 1].m) -
                    8.0 * spec.quantity(sm[k - 1].m) +
                    spec.quantity(sm[k - 2].m)) /
                   (12.0 * h));
      an.push_back(spec.rate(sm[k].m));
    }
    r.samples_used = fd.size();
    if (fd.empty()) {
      r.max_rel_residual = kNaN;
      out.push_back(r);
      continue;
    }
    double scale = 0.0;
    for (double v : an) scale = std::max(scale, std::abs(v));
    double worst = 0.0;
    for (std::size_t k = 0; k < fd.size(); ++k) {
      const double denom = std::max(std::abs(an[k]), 1e-3 * scale);
      const double diff = std::abs(fd[k] - an[k]);
      worst = std::max(worst, denom > 0.0 ? diff / denom : diff);
    }
    r.max_rel_residual = worst;
    out.push_back(r);
  }
  return out;
}

std::optional<double> time_to_scal(const Trajectory& traj, double threshold) {
  const auto& sm = traj.samples;
  const MonitorSample* prev = nullptr;
  for (const auto& s : sm) {
    if (std::isnan(s.scal)) continue;
    if (s.scal >= threshold) {
      if (prev == nullptr) return s.t;
      const double w = (threshold - prev->scal) / (s.scal - prev->scal);
      return prev->t + w * (s.t - prev->t);
    }
    prev = &s;
  }
  return std::nullopt;
}

}  // namespace homricci
