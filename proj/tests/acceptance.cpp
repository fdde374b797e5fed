// Acceptance report: one PASS/FAIL line per criterion, followed by details.
// Exits 0 only when every criterion passes.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <string>
#include <vector>

#include "homricci/commands.hpp"
#include "homricci/config.hpp"
#include "homricci/flow.hpp"
#include "homricci/lie_algebra.hpp"
#include "homricci/metric.hpp"
#include "homricci/ricci.hpp"

using namespace homricci;

namespace {

const std::string kConfigs = HOMRICCI_CONFIG_DIR;

using Clock = std::chrono::steady_clock;

struct Line {
  std::string id;
  std::string title;
  bool pass = true;
  double seconds = 0.0;
  double budget = 0.0;  // 0: no runtime bound
  std::vector<std::string> notes;

  void note(const char* fmt, ...) __attribute__((format(printf, 2, 3)));
};

void Line::note(const char* fmt, ...) {
  char buf[512];
  va_list ap;
  va_start(ap, fmt);
  std::vsnprintf(buf, sizeof buf, fmt, ap);
  va_end(ap);
  notes.emplace_back(buf);
}

std::string params(const MetricParams& m) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%s (%.17g, %.17g, %.17g, %.17g, %.17g)",
                std::string(to_string(m.model_case)).c_str(), m.alpha, m.beta,
                m.gamma, m.mu, m.nu);
  return buf;
}

double inf_norm(const Eigen::MatrixXd& a) { return a.cwiseAbs().maxCoeff(); }

template <class F>
Line timed(std::string id, std::string title, double budget, F body) {
  Line line{std::move(id), std::move(title)};
  line.budget = budget;
  const auto t0 = Clock::now();
  body(line);
  line.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  if (budget > 0.0 && line.seconds >= budget) {
    line.pass = false;
    line.note("runtime %.3f s exceeds %.0f s", line.seconds, budget);
  }
  return line;
}

void ac1(Line& L) {
  Eigen::MatrixXd t1 = Eigen::MatrixXd::Zero(5, 5);
  t1(3, 3) = t1(4, 4) = -4.0;
  Eigen::MatrixXd t2 = Eigen::MatrixXd::Zero(5, 5);
  t2(0, 0) = 16.0;
  t2(1, 3) = t2(3, 1) = 8.0;
  t2(2, 4) = t2(4, 2) = 8.0;
  const std::pair<HomogeneousModel, Eigen::MatrixXd> cases[] = {
      {build_so3_r3(), t1}, {build_sl2c(), t2}};
  for (const auto& [model, table] : cases) {
    const auto k = killing_form_on_complement(model);
    const bool exact = k == table;
    const auto d = check_model(model);
    const bool uni = is_unimodular(model);
    L.pass = L.pass && exact && d.ok(1e-12) && uni;
    L.note("%s: killing exact=%s jacobi=%.3g antisym=%.3g ad_inv=%.3g unimodular=%s",
           model.name.c_str(), exact ? "yes" : "no", d.jacobi_residual,
           d.antisymmetry_residual, d.ad_invariance_residual, uni ? "yes" : "no");
  }
}

void ac2(Line& L) {
  constexpr double tol = 1e-9;
  for (ModelCase mc : {ModelCase::So3R3, ModelCase::Sl2C}) {
    ParamSampler rng(kDefaultVerifySeed);
    double worst = 0.0;
    int bad = 0, with_nu = 0;
    MetricParams worst_m{};
    for (int i = 0; i < 1000; ++i) {
      const MetricParams m = rng.draw(mc);
      with_nu += m.mu != 0.0 && m.nu != 0.0;
      const Matrix5d ric = ricci_oracle(m);
      const double r = inf_norm(ricci_closed(m).matrix() - ric) / (1.0 + inf_norm(ric));
      bad += r > tol;
      if (r > worst) worst = r, worst_m = m;
    }
    L.pass = L.pass && bad == 0;
    L.note("%s: 1000 sets (%d with mu,nu != 0), worst rel %.3g, %d above %.0e",
           std::string(to_string(mc)).c_str(), with_nu, worst, bad, tol);
    if (bad > 0) {
      const auto closed = ricci_closed(worst_m).as_vector();
      const auto oracle = RicciComponents::from_matrix(mc, ricci_oracle(worst_m)).as_vector();
      L.note("  offending %s", params(worst_m).c_str());
      L.note("  closed (a,b,c,m,n) = (%.10g, %.10g, %.10g, %.10g, %.10g)", closed[0],
             closed[1], closed[2], closed[3], closed[4]);
      L.note("  oracle (a,b,c,m,n) = (%.10g, %.10g, %.10g, %.10g, %.10g)", oracle[0],
             oracle[1], oracle[2], oracle[3], oracle[4]);
    }
  }
}

void ac3(Line& L) {
  struct Spot {
    MetricParams m;
    Vector5d ric;
    double scal;
  };
  const Spot spots[] = {
      {{ModelCase::Sl2C, 1, 1, 1, 0, 0}, Vector5d(-15, -0.5, -0.5, -4, 0), -17.0},
      {{ModelCase::So3R3, 1, 1, 1, 0, 0}, Vector5d(0, 0, 1, 0, 0), 2.0},
  };
  for (const auto& s : spots) {
    const Vector5d oracle =
        RicciComponents::from_matrix(s.m.model_case, ricci_oracle(s.m)).as_vector();
    const Vector5d closed = ricci_closed(s.m).as_vector();
    const double e = std::max((oracle - s.ric).cwiseAbs().maxCoeff(),
                              (closed - s.ric).cwiseAbs().maxCoeff());
    const double es = std::abs(scalar_curvature(s.m) - s.scal);
    L.pass = L.pass && e < 1e-12 && es < 1e-12;
    L.note("%s: ric err %.3g, scal %.15g (err %.3g)", params(s.m).c_str(), e,
           scalar_curvature(s.m), es);
  }
}

void ac4(Line& L) {
  const Trajectory tr = integrate({ModelCase::So3R3, 1, 1, 1, 0, 0});
  double gamma_err = 0.0;
  for (const auto& s : tr.samples) {
    gamma_err = std::max(gamma_err, std::abs(s.m.gamma - (1.0 - 2.0 * s.t)));
  }
  const bool ext = tr.termination == Termination::Extinct && tr.extinction_time;
  const double t_ext = ext ? *tr.extinction_time : NAN;
  L.pass = ext && std::abs(t_ext - 0.5) <= 1e-6 && gamma_err <= 1e-8;
  L.note("termination %s at %.12g (|err| %.3g, tol 1e-6); max |gamma - (1-2t)| %.3g",
         std::string(to_string(tr.termination)).c_str(), t_ext, std::abs(t_ext - 0.5),
         gamma_err);
}

struct Sweeps {
  SweepConfig cfg[2];
  SweepResult res[2];
};

void ac5(Line& L, Sweeps& s) {
  const char* files[] = {"sweep_so3r3_grid.ini", "sweep_sl2c_grid.ini"};
  for (int i = 0; i < 2; ++i) {
    s.cfg[i] = load_sweep_config(kConfigs + "/" + files[i]);
    s.res[i] = run_sweep(s.cfg[i], true);
    const auto& r = s.res[i];
    double eps_max = 0.0, lo = 1e300, hi = 0.0, t_max = 0.0;
    for (const auto& rec : r.records) {
      const auto& m = rec.initial;
      eps_max = std::max(eps_max, eps_of(m));
      lo = std::min({lo, m.alpha, m.beta, m.gamma});
      hi = std::max({hi, m.alpha, m.beta, m.gamma});
      if (rec.extinction_time) t_max = std::max(t_max, *rec.extinction_time);
    }
    const bool ok = r.records.size() == 100 && r.extinct == 100 &&
                    s.cfg[i].flow.horizon == 1e3;
    L.pass = L.pass && ok;
    L.note("%s: %zu points, params in [%.3g, %.3g], eps0 <= %.3g; Extinct %zu, "
           "HorizonReached %zu, StepCollapse %zu; latest extinction %.6g",
           files[i], r.records.size(), lo, hi, eps_max, r.extinct, r.horizon_reached,
           r.step_collapse, t_max);
  }
}

void ac6(Line& L, const Sweeps& s) {
  const char* names[] = {"mu_zero_preserved", "beta_equals_gamma_preserved",
                         "nu_sqrt_alpha_conserved", "eps_strictly_decreasing"};
  for (const char* name : names) {
    int applicable = 0, failed = 0;
    double worst = -INFINITY, tol = 0.0;
    const MetricParams* worst_m = nullptr;
    for (const auto& r : s.res) {
      for (const auto& rec : r.records) {
        const auto* c = rec.monitors.find(name);
        if (!c || c->verdict == Verdict::NotApplicable) continue;
        ++applicable;
        failed += c->verdict == Verdict::Fail;
        tol = c->tolerance;
        if (c->worst > worst) worst = c->worst, worst_m = &rec.initial;
      }
    }
    L.pass = L.pass && failed == 0 && applicable > 0;
    L.note("%s: %d trajectories, %d failed, worst %.3g (tol %.0e)", name, applicable,
           failed, worst, tol);
    if (failed > 0 && worst_m) L.note("  worst at %s", params(*worst_m).c_str());
  }
}

void ac7(Line& L, const Sweeps& s) {
  constexpr double tol = 1e-4;
  struct Agg {
    std::string name;
    bool primary;
    int used = 0;
    double worst = 0.0;
    MetricParams at{};
  };
  std::vector<Agg> aggs = {
      {"so3r3.gamma_over_beta_rate", true}, {"so3r3.eps_rate", true},
      {"so3r3.x_rate", true},               {"so3r3.tau_over_beta2_rate", true},
      {"sl2c.x_rate", true},                {"so3r3.eps_rate_alt_sign", false},
      {"sl2c.x_rate_eps_squared", false},   {"sl2c.x_rate_unscaled", false},
  };
  FlowOptions opts;
  opts.sample_stride = 1e-3;
  opts.rtol = 1e-12;
  opts.atol = 1e-15;
  for (const auto& r : s.res) {
    // Every fifth grid point keeps the run short.
    for (std::size_t i = 0; i < r.records.size(); i += 5) {
      const MetricParams& m0 = r.records[i].initial;
      const Trajectory tr = integrate(m0, opts);
      const std::string prefix = std::string(to_string(m0.model_case)) + ".";
      for (const auto& id : identity_residuals(tr)) {
        if (!id.applicable || id.samples_used == 0) continue;
        for (auto& a : aggs) {
          if (a.name != prefix + id.name) continue;
          ++a.used;
          if (id.max_rel_residual > a.worst) a.worst = id.max_rel_residual, a.at = m0;
        }
      }
    }
  }
  for (const auto& a : aggs) {
    const bool ok = a.used > 0 && a.worst <= tol;
    if (a.primary) L.pass = L.pass && ok;
    L.note("%s%s: %d trajectories, worst rel %.3g (tol %.0e)%s", a.primary ? "" : "[variant] ",
           a.name.c_str(), a.used, a.worst, tol, ok ? "" : " FAIL");
    if (!ok && a.used > 0) L.note("  worst at %s", params(a.at).c_str());
  }
}

void ac8(Line& L) {
  ParamSampler rng(kDefaultVerifySeed + 8);
  double idem = 0.0, pull = 0.0;
  for (int i = 0; i < 1000; ++i) {
    for (ModelCase mc : {ModelCase::So3R3, ModelCase::Sl2C}) {
      const MetricParams m = rng.draw(mc);
      const auto g = gauge_reduce(m);
      const auto g2 = gauge_reduce(g.reduced);
      const Vector5d a = g.reduced.as_vector(), b = g2.reduced.as_vector();
      idem = std::max({idem, (a - b).cwiseAbs().maxCoeff() / a.cwiseAbs().maxCoeff(),
                       std::abs(g2.t)});
      const Matrix5d ad = adjoint_matrix(mc, g.t);
      const Matrix5d gm = metric_matrix(m);
      pull = std::max(pull, inf_norm(ad.transpose() * gm * ad - metric_matrix(g.reduced)) /
                                inf_norm(gm));
    }
  }
  L.pass = idem <= 1e-10 && pull <= 1e-10;
  L.note("gauge_reduce on 2000 draws: idempotence %.3g, pullback %.3g (tol 1e-10)", idem,
         pull);

  for (ModelCase mc : {ModelCase::So3R3, ModelCase::Sl2C}) {
    int runs = 0, failed = 0;
    std::size_t compared = 0;
    double worst = 0.0;
    MetricParams worst_m{};
    for (int i = 0; i < 10; ++i) {
      const MetricParams m0 = rng.draw(mc);
      const Trajectory a = integrate(m0);
      const Trajectory b = integrate(gauge_reduce(m0).reduced);
      const std::size_t n = std::min(a.samples.size(), b.samples.size());
      double w = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        const double sa = a.samples[k].scal, sb = b.samples[k].scal;
        w = std::max(w, std::abs(sa - sb) / std::max(1.0, std::abs(sa)));
      }
      ++runs;
      compared += n;
      failed += !(w <= 1e-6);
      if (!(w <= worst)) worst = w, worst_m = m0;
    }
    L.pass = L.pass && failed == 0;
    L.note("%s: scal raw vs reduced start, %d runs, %zu samples, worst rel %.3g (tol 1e-6), "
           "%d failed",
           std::string(to_string(mc)).c_str(), runs, compared, worst, failed);
    if (failed > 0) L.note("  worst at %s", params(worst_m).c_str());
  }
}

void ac9(Line& L, Sweeps& s) {
  for (int i = 0; i < 2; ++i) {
    const auto& r = s.res[i];
    std::size_t missing = 0;
    for (const auto& rec : r.records) {
      if (rec.scal_crossing_before_extinction) continue;
      if (missing++ < 4) {
        L.note("  no crossing: %s, extinct at %.6g", params(rec.initial).c_str(),
               rec.extinction_time.value_or(NAN));
      }
    }
    double tg_max = 0.0;
    for (const auto& rec : r.records) {
      if (rec.t_g) tg_max = std::max(tg_max, *rec.t_g);
    }
    L.pass = L.pass && missing == 0;
    L.note("%s: %zu/%zu cross scal = %.3g before extinction (latest t_g %.6g)",
           std::string(to_string(s.cfg[i].model_case)).c_str(), r.scal_crossings,
           r.records.size(), s.cfg[i].flow.scal_threshold, tg_max);
  }
  // Same grid under -2 Ric from the oracle.
  SweepConfig alt = s.cfg[1];
  alt.flow.rhs = RhsModel::Oracle;
  const SweepResult ra = run_sweep(alt, true);
  L.note("[diagnostic] sl2c grid with rhs = oracle: %zu/%zu Extinct, %zu/%zu cross",
         ra.extinct, ra.records.size(), ra.scal_crossings, ra.records.size());
}

}  // namespace

int main() {
  std::vector<Line> lines;
  Sweeps sweeps;
  lines.push_back(timed("AC1", "algebra fidelity", 1.0, ac1));
  lines.push_back(timed("AC2", "oracle equivalence", 5.0, ac2));
  lines.push_back(timed("AC3", "spot values", 0.0, ac3));
  lines.push_back(timed("AC4", "exact-solution extinction", 1.0, ac4));
  lines.push_back(timed("AC5", "finite-time extinction on grids", 30.0,
                        [&](Line& L) { ac5(L, sweeps); }));
  lines.push_back(timed("AC6", "flow invariants", 0.0, [&](Line& L) { ac6(L, sweeps); }));
  lines.push_back(timed("AC7", "identity residuals", 0.0, [&](Line& L) { ac7(L, sweeps); }));
  lines.push_back(timed("AC8", "gauge program", 0.0, ac8));
  lines.push_back(timed("AC9", "scalar curvature crossing", 0.0,
                        [&](Line& L) { ac9(L, sweeps); }));

  int failed = 0;
  for (const auto& l : lines) {
    failed += !l.pass;
    std::printf("%s %s  %-32s %8.3f s\n", l.id.c_str(), l.pass ? "PASS" : "FAIL",
                l.title.c_str(), l.seconds);
  }
  std::printf("\n");
  for (const auto& l : lines) {
    std::printf("%s\n", l.id.c_str());
    for (const auto& n : l.notes) std::printf("  %s\n", n.c_str());
  }
  std::printf("\nacceptance: %zu criteria, %d failed\n", lines.size(), failed);
  return failed == 0 ? 0 : 1;
}
