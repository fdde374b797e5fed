/* C interface to the homogeneous Ricci-flow library.
 *
 * All functions return an hrf_status; on failure hrf_last_error() holds a
 * message for the calling thread. Matrices are row-major. Objects returned
 * through out-pointers are owned by the caller and released with the
 * matching *_free function. */
#ifndef HOMRICCI_H
#define HOMRICCI_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(HOMRICCI_BUILDING)
#    define HRF_API __declspec(dllexport)
#  else
#    define HRF_API __declspec(dllimport)
#  endif
#elif defined(__GNUC__)
#  define HRF_API __attribute__((visibility("default")))
#else
#  define HRF_API
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum hrf_status {
  HRF_OK = 0,
  HRF_ERR_NULL_ARGUMENT = 1,
  HRF_ERR_INVALID_PARAMS = 2,
  HRF_ERR_DIMENSION = 3,
  HRF_ERR_NOT_UNIMODULAR = 4,
  HRF_ERR_CONFIG = 5,
  HRF_ERR_IO = 6,
  HRF_ERR_VERIFICATION = 7,
  HRF_ERR_INTERNAL = 8
} hrf_status;

typedef enum hrf_case { HRF_SO3R3 = 0, HRF_SL2C = 1 } hrf_case;

typedef enum hrf_rhs { HRF_RHS_CLOSED_FORM = 0, HRF_RHS_ORACLE = 1 } hrf_rhs;

typedef enum hrf_termination {
  HRF_EXTINCT = 0,
  HRF_HORIZON_REACHED = 1,
  HRF_STEP_COLLAPSE = 2
} hrf_termination;

typedef struct hrf_metric {
  int model_case; /* hrf_case */
  double alpha, beta, gamma, mu, nu;
} hrf_metric;

typedef struct hrf_flow_options {
  double horizon;
  double rtol;
  double atol;
  double extinction_tol;
  double sample_stride;
  double scal_threshold;
  int rhs; /* hrf_rhs */
} hrf_flow_options;

typedef struct hrf_trajectory hrf_trajectory;

HRF_API const char* hrf_version(void);
HRF_API const char* hrf_last_error(void);
HRF_API const char* hrf_status_string(hrf_status s);

/* Lie algebra: 6-dimensional coefficient vectors in the basis
 * (E, c3, c1, c2, F, G) resp. (X, A, B, C, D, E). */
HRF_API hrf_status hrf_bracket(int model_case, const double u[6],
                               const double v[6], double out[6]);
HRF_API hrf_status hrf_killing_form(int model_case, double out[36]);

/* Metric-level operations; 5x5 matrices over the complement basis. */
HRF_API hrf_status hrf_metric_matrix(const hrf_metric* m, double out[25]);
HRF_API hrf_status hrf_ricci_oracle(const hrf_metric* m, double out[25]);
/* (r_a, r_b, r_c, r_m, r_n) from the closed forms. */
HRF_API hrf_status hrf_ricci_closed(const hrf_metric* m, double out[5]);
HRF_API hrf_status hrf_scalar_curvature(const hrf_metric* m, double* out);
HRF_API hrf_status hrf_gauge_reduce(const hrf_metric* m, hrf_metric* reduced,
                                    double* t);
HRF_API hrf_status hrf_flow_rhs(const hrf_metric* m, int rhs, double out[5]);

HRF_API void hrf_flow_options_default(hrf_flow_options* opts);
/* opts may be NULL for the defaults. */
HRF_API hrf_status hrf_integrate(const hrf_metric* m0,
                                 const hrf_flow_options* opts,
                                 hrf_trajectory** out);
HRF_API void hrf_trajectory_free(hrf_trajectory* traj);

HRF_API size_t hrf_trajectory_sample_count(const hrf_trajectory* traj);
/* Row in CSV column order: t, alpha, beta, gamma, mu, nu, eps, x, scal,
 * lambda_min. */
HRF_API hrf_status hrf_trajectory_sample(const hrf_trajectory* traj,
                                         size_t index, double row[10]);
HRF_API hrf_status hrf_trajectory_termination(const hrf_trajectory* traj,
                                              int* kind, double* time);
/* *present is set to 0 when the quantity does not exist. */
HRF_API hrf_status hrf_trajectory_extinction_time(const hrf_trajectory* traj,
                                                  int* present, double* t);
HRF_API hrf_status hrf_trajectory_t_g(const hrf_trajectory* traj,
                                      int* present, double* t);
HRF_API hrf_status hrf_trajectory_write_csv(const hrf_trajectory* traj,
                                            const char* path);
/* *json receives a NUL-terminated string released with hrf_string_free. */
HRF_API hrf_status hrf_trajectory_summary_json(const hrf_trajectory* traj,
                                               char** json);
HRF_API void hrf_string_free(char* s);

/* Commands. hrf_cmd_verify returns HRF_ERR_VERIFICATION when any check
 * fails; the report is produced either way. */
HRF_API hrf_status hrf_cmd_run(const char* config_path, const char* out_csv,
                               const char* out_json);
HRF_API hrf_status hrf_cmd_sweep(const char* config_path,
                                 const char* out_json, int parallel);
HRF_API hrf_status hrf_cmd_verify(size_t samples, uint64_t seed,
                                  char** report);

#ifdef __cplusplus
}
#endif

#endif /* HOMRICCI_H */
