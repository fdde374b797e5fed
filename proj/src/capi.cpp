#include "homricci/homricci.h"

#include <cstdlib>
#include <cstring>
#include <exception>
#include <new>
#include <string>

#include "homricci/commands.hpp"
#include "homricci/error.hpp"
#include "homricci/flow.hpp"
#include "homricci/output.hpp"
#include "homricci/ricci.hpp"

struct hrf_trajectory {
  homricci::Trajectory traj;
};

namespace {

thread_local std::string g_last_error;

hrf_status fail(hrf_status s, const char* what) {
  g_last_error = what;
  return s;
}

template <class F>
hrf_status guarded(F&& f) {
  try {
    g_last_error.clear();
    return f();
  } catch (const homricci::ConfigError& e) {
    return fail(HRF_ERR_CONFIG, e.what());
  } catch (const homricci::IoError& e) {
    return fail(HRF_ERR_IO, e.what());
  } catch (const homricci::DimensionMismatch& e) {
    return fail(HRF_ERR_DIMENSION, e.what());
  } catch (const homricci::InvalidParams& e) {
    return fail(HRF_ERR_INVALID_PARAMS, e.what());
  } catch (const homricci::NotUnimodular& e) {
    return fail(HRF_ERR_NOT_UNIMODULAR, e.what());
  } catch (const std::filesystem::filesystem_error& e) {
    return fail(HRF_ERR_IO, e.what());
  } catch (const std::bad_alloc&) {
    return fail(HRF_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(HRF_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(HRF_ERR_INTERNAL, "unknown exception");
  }
}

#define HRF_REQUIRE(p)                                          \
  do {                                                          \
    if ((p) == nullptr) return fail(HRF_ERR_NULL_ARGUMENT, #p " is null"); \
  } while (0)

homricci::ModelCase to_case(int c) {
  if (c == HRF_SO3R3) return homricci::ModelCase::So3R3;
  if (c == HRF_SL2C) return homricci::ModelCase::Sl2C;
  throw homricci::InvalidParams("unknown model case " + std::to_string(c));
}

homricci::MetricParams to_params(const hrf_metric* m) {
  return {to_case(m->model_case), m->alpha, m->beta, m->gamma, m->mu, m->nu};
}

hrf_metric from_params(const homricci::MetricParams& m) {
  return {m.model_case == homricci::ModelCase::So3R3 ? HRF_SO3R3 : HRF_SL2C,
          m.alpha, m.beta, m.gamma, m.mu, m.nu};
}

homricci::RhsModel to_rhs(int r) {
  if (r == HRF_RHS_CLOSED_FORM) return homricci::RhsModel::ClosedForm;
  if (r == HRF_RHS_ORACLE) return homricci::RhsModel::Oracle;
  throw homricci::InvalidParams("unknown rhs model " + std::to_string(r));
}

template <class M>
void copy_row_major(const M& a, double* out) {
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) *out++ = a(i, j);
  }
}

char* dup_string(const std::string& s) {
  char* p = static_cast<char*>(std::malloc(s.size() + 1));
  if (p == nullptr) throw std::bad_alloc();
  std::memcpy(p, s.c_str(), s.size() + 1);
  return p;
}

}  // namespace

extern "C" {

const char* hrf_version(void) { return "1.0.0"; }

const char* hrf_last_error(void) { return g_last_error.c_str(); }

const char* hrf_status_string(hrf_status s) {
  switch (s) {
    case HRF_OK: return "ok";
    case HRF_ERR_NULL_ARGUMENT: return "null argument";
    case HRF_ERR_INVALID_PARAMS: return "invalid parameters";
    case HRF_ERR_DIMENSION: return "dimension mismatch";
    case HRF_ERR_NOT_UNIMODULAR: return "not unimodular";
    case HRF_ERR_CONFIG: return "configuration error";
    case HRF_ERR_IO: return "i/o error";
    case HRF_ERR_VERIFICATION: return "verification failure";
    case HRF_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

hrf_status hrf_bracket(int model_case, const double u[6], const double v[6],
                       double out[6]) {
  HRF_REQUIRE(u);
  HRF_REQUIRE(v);
  HRF_REQUIRE(out);
  return guarded([&] {
    const auto& model = homricci::model_for(to_case(model_case));
    const Eigen::VectorXd r = homricci::bracket(
        model, Eigen::Map<const Eigen::VectorXd>(u, 6),
        Eigen::Map<const Eigen::VectorXd>(v, 6));
    for (int i = 0; i < 6; ++i) out[i] = r(i);
    return HRF_OK;
  });
}

hrf_status hrf_killing_form(int model_case, double out[36]) {
  HRF_REQUIRE(out);
  return guarded([&] {
    copy_row_major(homricci::killing_form(homricci::model_for(to_case(model_case))),
                   out);
    return HRF_OK;
  });
}

hrf_status hrf_metric_matrix(const hrf_metric* m, double out[25]) {
  HRF_REQUIRE(m);
  HRF_REQUIRE(out);
  return guarded([&] {
    copy_row_major(homricci::metric_matrix(to_params(m)), out);
    return HRF_OK;
  });
}

hrf_status hrf_ricci_oracle(const hrf_metric* m, double out[25]) {
  HRF_REQUIRE(m);
  HRF_REQUIRE(out);
  return guarded([&] {
    copy_row_major(homricci::ricci_oracle(to_params(m)), out);
    return HRF_OK;
  });
}

hrf_status hrf_ricci_closed(const hrf_metric* m, double out[5]) {
  HRF_REQUIRE(m);
  HRF_REQUIRE(out);
  return guarded([&] {
    const homricci::Vector5d r = homricci::ricci_closed(to_params(m)).as_vector();
    for (int i = 0; i < 5; ++i) out[i] = r(i);
    return HRF_OK;
  });
}

hrf_status hrf_scalar_curvature(const hrf_metric* m, double* out) {
  HRF_REQUIRE(m);
  HRF_REQUIRE(out);
  return guarded([&] {
    *out = homricci::scalar_curvature(to_params(m));
    return HRF_OK;
  });
}

hrf_status hrf_gauge_reduce(const hrf_metric* m, hrf_metric* reduced,
                            double* t) {
  HRF_REQUIRE(m);
  HRF_REQUIRE(reduced);
  return guarded([&] {
    const auto r = homricci::gauge_reduce(to_params(m));
    *reduced = from_params(r.reduced);
    if (t != nullptr) *t = r.t;
    return HRF_OK;
  });
}

hrf_status hrf_flow_rhs(const hrf_metric* m, int rhs, double out[5]) {
  HRF_REQUIRE(m);
  HRF_REQUIRE(out);
  return guarded([&] {
    const homricci::Vector5d d = homricci::flow_rhs(to_params(m), to_rhs(rhs));
    for (int i = 0; i < 5; ++i) out[i] = d(i);
    return HRF_OK;
  });
}

void hrf_flow_options_default(hrf_flow_options* opts) {
  if (opts == nullptr) return;
  const homricci::FlowOptions d;
  opts->horizon = d.horizon;
  opts->rtol = d.rtol;
  opts->atol = d.atol;
  opts->extinction_tol = d.extinction_tol;
  opts->sample_stride = d.sample_stride;
  opts->scal_threshold = d.scal_threshold;
  opts->rhs = HRF_RHS_CLOSED_FORM;
}

hrf_status hrf_integrate(const hrf_metric* m0, const hrf_flow_options* opts,
                         hrf_trajectory** out) {
  HRF_REQUIRE(m0);
  HRF_REQUIRE(out);
  *out = nullptr;
  return guarded([&] {
    homricci::FlowOptions o;
    if (opts != nullptr) {
      o.horizon = opts->horizon;
      o.rtol = opts->rtol;
      o.atol = opts->atol;
      o.extinction_tol = opts->extinction_tol;
      o.sample_stride = opts->sample_stride;
      o.scal_threshold = opts->scal_threshold;
      o.rhs = to_rhs(opts->rhs);
    }
    *out = new hrf_trajectory{homricci::integrate(to_params(m0), o)};
    return HRF_OK;
  });
}

void hrf_trajectory_free(hrf_trajectory* traj) { delete traj; }

size_t hrf_trajectory_sample_count(const hrf_trajectory* traj) {
  return traj == nullptr ? 0 : traj->traj.samples.size();
}

hrf_status hrf_trajectory_sample(const hrf_trajectory* traj, size_t index,
                                 double row[10]) {
  HRF_REQUIRE(traj);
  HRF_REQUIRE(row);
  if (index >= traj->traj.samples.size()) {
    return fail(HRF_ERR_DIMENSION, "sample index out of range");
  }
  const homricci::CsvRow r = homricci::csv_row(traj->traj.samples[index]);
  std::copy(r.begin(), r.end(), row);
  return HRF_OK;
}

hrf_status hrf_trajectory_termination(const hrf_trajectory* traj, int* kind,
                                      double* time) {
  HRF_REQUIRE(traj);
  if (kind != nullptr) {
    switch (traj->traj.termination) {
      case homricci::Termination::Extinct: *kind = HRF_EXTINCT; break;
      case homricci::Termination::HorizonReached: *kind = HRF_HORIZON_REACHED; break;
      case homricci::Termination::StepCollapse: *kind = HRF_STEP_COLLAPSE; break;
    }
  }
  if (time != nullptr) *time = traj->traj.termination_time;
  return HRF_OK;
}

hrf_status hrf_trajectory_extinction_time(const hrf_trajectory* traj,
                                          int* present, double* t) {
  HRF_REQUIRE(traj);
  HRF_REQUIRE(present);
  const auto& v = traj->traj.extinction_time;
  *present = v.has_value();
  if (v && t != nullptr) *t = *v;
  return HRF_OK;
}

hrf_status hrf_trajectory_t_g(const hrf_trajectory* traj, int* present,
                              double* t) {
  HRF_REQUIRE(traj);
  HRF_REQUIRE(present);
  const auto& v = traj->traj.t_scal_threshold;
  *present = v.has_value();
  if (v && t != nullptr) *t = *v;
  return HRF_OK;
}

hrf_status hrf_trajectory_write_csv(const hrf_trajectory* traj,
                                    const char* path) {
  HRF_REQUIRE(traj);
  HRF_REQUIRE(path);
  return guarded([&] {
    homricci::write_file_atomic(path, homricci::trajectory_csv(traj->traj));
    return HRF_OK;
  });
}

hrf_status hrf_trajectory_summary_json(const hrf_trajectory* traj,
                                       char** json) {
  HRF_REQUIRE(traj);
  HRF_REQUIRE(json);
  *json = nullptr;
  return guarded([&] {
    *json = dup_string(homricci::summary_json(traj->traj));
    return HRF_OK;
  });
}

void hrf_string_free(char* s) { std::free(s); }

hrf_status hrf_cmd_run(const char* config_path, const char* out_csv,
                       const char* out_json) {
  HRF_REQUIRE(config_path);
  return guarded([&] {
    const homricci::RunConfig cfg = homricci::load_run_config(config_path);
    const std::string csv = out_csv != nullptr ? out_csv : cfg.out_csv;
    const std::string json = out_json != nullptr ? out_json : cfg.out_json;
    if (csv.empty() || json.empty()) {
      throw homricci::ConfigError(
          "output paths missing: pass them explicitly or set [output] csv/json");
    }
    homricci::cmd_run(cfg, csv, json);
    return HRF_OK;
  });
}

hrf_status hrf_cmd_sweep(const char* config_path, const char* out_json,
                         int parallel) {
  HRF_REQUIRE(config_path);
  HRF_REQUIRE(out_json);
  return guarded([&] {
    homricci::cmd_sweep(homricci::load_sweep_config(config_path), out_json,
                        parallel != 0);
    return HRF_OK;
  });
}

hrf_status hrf_cmd_verify(size_t samples, uint64_t seed, char** report) {
  if (report != nullptr) *report = nullptr;
  return guarded([&] {
    const homricci::VerifyReport r = homricci::cmd_verify(samples, seed);
    if (report != nullptr) *report = dup_string(r.text());
    if (!r.pass()) {
      g_last_error = "one or more verification checks failed";
      return HRF_ERR_VERIFICATION;
    }
    return HRF_OK;
  });
}

}  // extern "C"
