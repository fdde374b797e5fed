// Exercises the shared library through its C header only.
#include "doctest.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "homricci/homricci.h"

TEST_SUITE("capi") {

TEST_CASE("null arguments are reported, not dereferenced") {
  double out[25];
  CHECK(hrf_ricci_oracle(nullptr, out) == HRF_ERR_NULL_ARGUMENT);
  CHECK(std::strlen(hrf_last_error()) > 0);
  hrf_metric m{HRF_SO3R3, 1, 1, 1, 0, 0};
  CHECK(hrf_ricci_oracle(&m, nullptr) == HRF_ERR_NULL_ARGUMENT);
  CHECK(hrf_integrate(&m, nullptr, nullptr) == HRF_ERR_NULL_ARGUMENT);
  CHECK(hrf_trajectory_sample_count(nullptr) == 0);
  hrf_trajectory_free(nullptr);
  hrf_string_free(nullptr);
}

TEST_CASE("error codes map from library failures") {
  hrf_metric bad{HRF_SO3R3, 1, 1, 1, 2, 0};
  double out[5];
  CHECK(hrf_ricci_closed(&bad, out) == HRF_ERR_INVALID_PARAMS);
  CHECK(std::string(hrf_last_error()).find("beta*gamma must exceed") != std::string::npos);
  hrf_metric unknown{7, 1, 1, 1, 0, 0};
  CHECK(hrf_flow_rhs(&unknown, HRF_RHS_CLOSED_FORM, out) == HRF_ERR_INVALID_PARAMS);
  hrf_metric ok{HRF_SL2C, 1, 1, 1, 0, 0};
  CHECK(hrf_flow_rhs(&ok, 9, out) == HRF_ERR_INVALID_PARAMS);
  CHECK(hrf_flow_rhs(&ok, HRF_RHS_CLOSED_FORM, out) == HRF_OK);
  CHECK(std::strlen(hrf_last_error()) == 0);
  CHECK(std::string(hrf_status_string(HRF_ERR_CONFIG)) == "configuration error");
}

TEST_CASE("algebra and curvature values") {
  const double F[6] = {0, 0, 0, 0, 1, 0}, G[6] = {0, 0, 0, 0, 0, 1};
  double out[6];
  REQUIRE(hrf_bracket(HRF_SO3R3, F, G, out) == HRF_OK);
  CHECK(out[0] == -1.0);

  double k[36];
  REQUIRE(hrf_killing_form(HRF_SL2C, k) == HRF_OK);
  CHECK(k[1 * 6 + 1] == 16.0);  // B(A, A)
  CHECK(k[2 * 6 + 4] == 8.0);   // B(B, D)

  hrf_metric m{HRF_SL2C, 1, 1, 1, 0, 0};
  double ric[25], closed[5], scal = 0;
  REQUIRE(hrf_ricci_oracle(&m, ric) == HRF_OK);
  CHECK(ric[0] == doctest::Approx(-15.0));
  CHECK(ric[1 * 5 + 3] == doctest::Approx(-4.0));
  REQUIRE(hrf_ricci_closed(&m, closed) == HRF_OK);
  CHECK(closed[3] == -4.0);
  REQUIRE(hrf_scalar_curvature(&m, &scal) == HRF_OK);
  CHECK(scal == doctest::Approx(-17.0));

  double g[25];
  hrf_metric twisted{HRF_SO3R3, 1, 2, 3, 1, 0};
  REQUIRE(hrf_metric_matrix(&twisted, g) == HRF_OK);
  CHECK(g[1 * 5 + 3] == 1.0);

  hrf_metric reduced{};
  double t = 0;
  REQUIRE(hrf_gauge_reduce(&twisted, &reduced, &t) == HRF_OK);
  CHECK(t == 0.5);
  CHECK(reduced.gamma == 2.5);
  CHECK(reduced.mu == 0.0);
}

TEST_CASE("integrate and read back a trajectory") {
  hrf_metric m{HRF_SO3R3, 1, 1, 1, 0, 0};
  hrf_flow_options o;
  hrf_flow_options_default(&o);
  CHECK(o.rtol == 1e-9);
  CHECK(o.horizon == 1e3);
  hrf_trajectory* tr = nullptr;
  REQUIRE(hrf_integrate(&m, &o, &tr) == HRF_OK);
  REQUIRE(tr != nullptr);

  int kind = -1;
  double when = 0;
  REQUIRE(hrf_trajectory_termination(tr, &kind, &when) == HRF_OK);
  CHECK(kind == HRF_EXTINCT);
  int present = 0;
  double t_ext = 0;
  REQUIRE(hrf_trajectory_extinction_time(tr, &present, &t_ext) == HRF_OK);
  CHECK(present == 1);
  CHECK(std::abs(t_ext - 0.5) < 1e-6);
  double tg = -1;
  REQUIRE(hrf_trajectory_t_g(tr, &present, &tg) == HRF_OK);
  CHECK(present == 1);
  CHECK(tg == 0.0);

  const size_t n = hrf_trajectory_sample_count(tr);
  CHECK(n == 500);
  double row[10];
  REQUIRE(hrf_trajectory_sample(tr, 100, row) == HRF_OK);
  CHECK(row[0] == doctest::Approx(0.1));
  CHECK(row[3] == doctest::Approx(0.8));
  CHECK(hrf_trajectory_sample(tr, n, row) == HRF_ERR_DIMENSION);

  char* json = nullptr;
  REQUIRE(hrf_trajectory_summary_json(tr, &json) == HRF_OK);
  CHECK(std::string(json).find("\"termination\": \"Extinct\"") != std::string::npos);
  hrf_string_free(json);

  const std::string path = std::string(std::getenv("TMPDIR") ? std::getenv("TMPDIR") : "/tmp") +
                           "/homricci_capi.csv";
  REQUIRE(hrf_trajectory_write_csv(tr, path.c_str()) == HRF_OK);
  std::FILE* f = std::fopen(path.c_str(), "r");
  REQUIRE(f != nullptr);
  char header[80] = {};
  CHECK(std::fgets(header, sizeof header, f) != nullptr);
  std::fclose(f);
  std::remove(path.c_str());
  CHECK(std::string(header) == "t,alpha,beta,gamma,mu,nu,eps,x,scal,lambda_min\n");
  CHECK(hrf_trajectory_write_csv(tr, "/nonexistent-dir/x.csv") == HRF_ERR_IO);

  hrf_trajectory_free(tr);
}

TEST_CASE("invalid options are rejected") {
  hrf_metric m{HRF_SO3R3, 1, 1, 1, 0, 0};
  hrf_flow_options o;
  hrf_flow_options_default(&o);
  o.atol = -1;
  hrf_trajectory* tr = reinterpret_cast<hrf_trajectory*>(0x1);
  CHECK(hrf_integrate(&m, &o, &tr) == HRF_ERR_INVALID_PARAMS);
  CHECK(tr == nullptr);
}

TEST_CASE("commands through the C API") {
  char* report = nullptr;
  CHECK(hrf_cmd_verify(0, 1, &report) == HRF_OK);
  REQUIRE(report != nullptr);
  CHECK(std::string(report).find("20 checks, 0 failed") != std::string::npos);
  hrf_string_free(report);

  CHECK(hrf_cmd_run("/nonexistent.ini", "/tmp/a.csv", "/tmp/a.json") == HRF_ERR_IO);
  CHECK(hrf_cmd_sweep("/nonexistent.ini", "/tmp/a.json", 0) == HRF_ERR_IO);
  CHECK(hrf_cmd_run(nullptr, nullptr, nullptr) == HRF_ERR_NULL_ARGUMENT);
}

TEST_CASE("version string") { CHECK(std::string(hrf_version()) == "1.0.0"); }

}  // TEST_SUITE
