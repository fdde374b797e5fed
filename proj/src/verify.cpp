#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>

#include "homricci/commands.hpp"
#include "homricci/lie_algebra.hpp"
#include "homricci/ricci.hpp"

namespace homricci {

double ParamSampler::uniform() {
  return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
}

MetricParams ParamSampler::draw(ModelCase c) {
  auto log_uniform = [this] { return std::exp(std::log(0.1) + uniform() * std::log(100.0)); };
  MetricParams m;
  m.model_case = c;
  m.alpha = log_uniform();
  m.beta = log_uniform();
  m.gamma = log_uniform();
  const double r = std::sqrt(uniform() * 0.9 * m.beta * m.gamma);
  const double theta = 2.0 * M_PI * uniform();
  m.mu = r * std::cos(theta);
  m.nu = r * std::sin(theta);
  return m;
}

bool VerifyReport::pass() const {
  return std::all_of(checks.begin(), checks.end(),
                     [](const VerifyCheck& c) { return c.pass; });
}

std::string VerifyReport::text() const {
  std::ostringstream os;
  os << "verify: samples=" << samples << " seed=" << seed << "\n";
  std::size_t failed = 0;
  for (const auto& c : checks) {
    char line[256];
    std::snprintf(line, sizeof line, "%-4s %-40s tol=%-9.3g worst=%-12.6g n=%zu",
                  c.pass ? "PASS" : "FAIL", c.name.c_str(), c.tolerance, c.worst,
                  c.cases);
    os << line;
    if (!c.pass && !c.detail.empty()) os << "  at " << c.detail;
    os << "\n";
    if (!c.pass) ++failed;
  }
  os << "verify: " << checks.size() << " checks, " << failed << " failed\n";
  return os.str();
}

namespace {

std::string describe(const MetricParams& m) {
  std::ostringstream os;
  os.precision(17);
  os << to_string(m.model_case) << "(alpha=" << m.alpha << ", beta=" << m.beta
     << ", gamma=" << m.gamma << ", mu=" << m.mu << ", nu=" << m.nu << ")";
  return os.str();
}

double inf_norm(const Eigen::MatrixXd& a) { return a.cwiseAbs().maxCoeff(); }

/// Running worst case of one named check.
class Tracker {
 public:
  Tracker(std::string name, double tol) { c_.name = std::move(name); c_.tolerance = tol; }

  void add(double residual, const std::string& where = {}) {
    ++c_.cases;
    if (std::isnan(c_.worst)) return;
    if (c_.cases == 1 || std::isnan(residual) || residual > c_.worst) {
      c_.worst = residual;
      worst_where_ = where;
    }
  }
  void add(double residual, const MetricParams& m) { add(residual, describe(m)); }

  VerifyCheck done() {
    c_.pass = c_.cases > 0 && !std::isnan(c_.worst) && c_.worst <= c_.tolerance;
    if (!c_.pass) c_.detail = worst_where_;
    return c_;
  }

 private:
  VerifyCheck c_;
  std::string worst_where_;
};

void structural(ModelCase mc, std::vector<VerifyCheck>& out) {
  const std::string tag(to_string(mc));
  const HomogeneousModel& model = model_for(mc);
  const ModelDiagnostics d = check_model(model);

  auto single = [&](const std::string& name, double tol, double value) {
    Tracker t(tag + "." + name, tol);
    t.add(value);
    out.push_back(t.done());
  };
  single("jacobi", 1e-12, d.jacobi_residual);
  single("antisymmetry", 1e-12, d.antisymmetry_residual);
  single("isotropy_invariance", 1e-12, d.ad_invariance_residual);
  single("unimodular", 1e-12, d.unimodularity_residual);
  single("partition", 0.0, d.partition_ok ? 0.0 : 1.0);

  Matrix5d expected_killing = Matrix5d::Zero();
  if (mc == ModelCase::So3R3) {
    expected_killing(3, 3) = expected_killing(4, 4) = -4.0;
  } else {
    expected_killing(0, 0) = 16.0;
    expected_killing(1, 3) = expected_killing(3, 1) = 8.0;
    expected_killing(2, 4) = expected_killing(4, 2) = 8.0;
  }
  single("killing_table", 0.0,
         inf_norm(killing_form_on_complement(model) - expected_killing));

  const MetricParams unit{mc, 1.0, 1.0, 1.0, 0.0, 0.0};
  const Vector5d ric_expected = mc == ModelCase::So3R3
                                    ? Vector5d(0.0, 0.0, 1.0, 0.0, 0.0)
                                    : Vector5d(-15.0, -0.5, -0.5, -4.0, 0.0);
  const Vector5d rhs_expected = mc == ModelCase::So3R3
                                    ? Vector5d(0.0, 0.0, -2.0, 0.0, 0.0)
                                    : Vector5d(30.0, 1.0, 1.0, 8.0, 0.0);
  const double scal_expected = mc == ModelCase::So3R3 ? 2.0 : -17.0;
  single("ricci_oracle_spot", 1e-12,
         inf_norm(ricci_oracle(unit) - metric_shaped(ric_expected(0), ric_expected(1),
                                                     ric_expected(2), ric_expected(3),
                                                     ric_expected(4))));
  single("ricci_closed_spot", 1e-12,
         inf_norm(ricci_closed(unit).as_vector() - ric_expected));
  single("scalar_curvature_spot", 1e-12,
         std::abs(scalar_curvature(unit) - scal_expected));
  single("flow_rhs_spot", 1e-12, inf_norm(flow_rhs(unit) - rhs_expected));
}

Matrix5d random_orthogonal(ParamSampler& rng) {
  Matrix5d a;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) a(i, j) = 2.0 * rng.uniform() - 1.0;
  }
  return Eigen::HouseholderQR<Matrix5d>(a).householderQ();
}

void randomized(ModelCase mc, std::size_t n, ParamSampler& rng,
                std::vector<VerifyCheck>& out) {
  const std::string tag(to_string(mc));
  const HomogeneousModel& model = model_for(mc);
  Tracker oracle_closed(tag + ".oracle_vs_closed_form", 1e-9);
  Tracker pattern(tag + ".oracle_isotropy_pattern", 1e-10);
  Tracker frame_rot(tag + ".oracle_frame_independence", 1e-9);
  Tracker ortho(tag + ".frame_orthonormality", 1e-10);
  Tracker eig(tag + ".eigen_equation", 1e-10);
  Tracker pullback(tag + ".gauge_pullback", 1e-10);
  Tracker idem(tag + ".gauge_idempotent", 1e-10);
  Tracker equiv(tag + ".gauge_ricci_equivariance", 1e-9);
  Tracker scal_gauge(tag + ".gauge_scalar_curvature", 1e-10);
  Tracker rhs_closed(tag + ".flow_rhs_vs_closed_form", 1e-12);
  Tracker rhs_oracle(tag + ".flow_rhs_vs_oracle", 1e-9);

  for (std::size_t i = 0; i < n; ++i) {
    const MetricParams m = rng.draw(mc);
    const Matrix5d g = metric_matrix(m);
    const Matrix5d ric = ricci_oracle(m);
    const double ric_scale = 1.0 + inf_norm(ric);

    oracle_closed.add(inf_norm(ricci_closed(m).matrix() - ric) / ric_scale, m);
    pattern.add(shape_residual(ric) / ric_scale, m);

    const Frame f = orthonormal_frame(m);
    ortho.add(inf_norm(f.vectors.transpose() * g * f.vectors -
                       Matrix5d::Identity()), m);
    if (!f.diagonal) {
      const double tau = m.tau();
      const double s = 1.0 + m.beta * m.gamma;
      eig.add(std::max(std::abs((f.lambda_minus - m.beta) * (f.lambda_minus - m.gamma) - tau),
                       std::abs((f.lambda_plus - m.beta) * (f.lambda_plus - m.gamma) - tau)) / s,
              m);
    }
    const Eigen::MatrixXd rotated = f.vectors * random_orthogonal(rng);
    frame_rot.add(inf_norm(ricci_oracle(model, Eigen::MatrixXd(g), rotated) - ric) /
                      ric_scale, m);

    const GaugeReduction red = gauge_reduce(m);
    const Matrix5d ad = adjoint_matrix(mc, red.t);
    const Matrix5d g_red = metric_matrix(red.reduced);
    pullback.add(inf_norm(ad.transpose() * g * ad - g_red) / (1.0 + inf_norm(g)), m);
    const GaugeReduction twice = gauge_reduce(red.reduced);
    idem.add(std::max(inf_norm(twice.reduced.as_vector() - red.reduced.as_vector()) /
                          (1.0 + inf_norm(red.reduced.as_vector())),
                      std::abs(twice.t)), m);
    const Matrix5d ric_red = ricci_oracle(red.reduced);
    equiv.add(inf_norm(ad.transpose() * ric * ad - ric_red) / ric_scale, m);
    const double sc = scalar_curvature(m);
    scal_gauge.add(std::abs(scalar_curvature(red.reduced) - sc) / (1.0 + std::abs(sc)), m);

    const Vector5d rhs = flow_rhs(m);
    const Vector5d closed = ricci_closed(m).as_vector();
    rhs_closed.add(inf_norm(rhs + 2.0 * closed) / (1.0 + inf_norm(rhs)), m);
    const Vector5d oracle_slots = RicciComponents::from_matrix(mc, ric).as_vector();
    rhs_oracle.add(inf_norm(rhs + 2.0 * oracle_slots) / (1.0 + inf_norm(rhs)), m);
  }

  for (Tracker* t : {&oracle_closed, &pattern, &frame_rot, &ortho, &eig, &pullback,
                     &idem, &equiv, &scal_gauge, &rhs_closed, &rhs_oracle}) {
    VerifyCheck c = t->done();
    // tau = 0 draws never reach the eigen check; an empty check is vacuous.
    if (c.cases == 0) c.pass = true;
    out.push_back(c);
  }
}

void flow_checks(ModelCase mc, std::size_t n, ParamSampler& rng,
                 std::vector<VerifyCheck>& out) {
  const std::string tag(to_string(mc));
  const bool so3 = mc == ModelCase::So3R3;
  std::vector<std::pair<std::string, Tracker>> trackers;
  auto tracker = [&](const std::string& name, double tol) -> Tracker& {
    for (auto& [k, t] : trackers) {
      if (k == name) return t;
    }
    trackers.emplace_back(name, Tracker(tag + ".flow." + name, tol));
    return trackers.back().second;
  };

  for (std::size_t i = 0; i < n; ++i) {
    MetricParams m0 = gauge_reduce(rng.draw(mc)).reduced;
    const Trajectory traj = integrate(m0);
    tracker("extinct", 0.0).add(traj.termination == Termination::Extinct ? 0.0 : 1.0, m0);
    const MonitorReport rep = monitors(traj);
    for (const auto& c : rep.checks) {
      if (c.verdict == Verdict::NotApplicable) continue;
      // Strict decrease and the side count carry their own pass rule.
      const bool binary = c.name == "eps_strictly_decreasing" ||
                          c.name == "x_side_changes_at_most_once";
      tracker(c.name, binary ? 0.0 : c.tolerance)
          .add(binary ? (c.verdict == Verdict::Pass ? 0.0 : 1.0) : c.worst, m0);
    }
  }
  if (so3) {
    const MetricParams exact{mc, 1.0, 1.0, 1.0, 0.0, 0.0};
    const Trajectory traj = integrate(exact);
    const double t_ext = traj.extinction_time.value_or(std::nan(""));
    tracker("exact_extinction_time", 1e-6).add(std::abs(t_ext - 0.5), exact);
  }
  for (auto& [k, t] : trackers) out.push_back(t.done());
}

}  // namespace

VerifyReport cmd_verify(std::size_t samples, std::uint64_t seed) {
  VerifyReport report;
  report.samples = samples;
  report.seed = seed;
  ParamSampler rng(seed);
  for (ModelCase mc : {ModelCase::So3R3, ModelCase::Sl2C}) {
    structural(mc, report.checks);
  }
  if (samples == 0) return report;
  for (ModelCase mc : {ModelCase::So3R3, ModelCase::Sl2C}) {
    randomized(mc, samples, rng, report.checks);
  }
  const std::size_t n_flows = std::clamp<std::size_t>(samples / 100, 1, 10);
  for (ModelCase mc : {ModelCase::So3R3, ModelCase::Sl2C}) {
    flow_checks(mc, n_flows, rng, report.checks);
  }
  return report;
}

}  // namespace homricci
