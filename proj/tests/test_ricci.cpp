#include "doctest.h"

#include <cmath>

#include "homricci/commands.hpp"
#include "homricci/error.hpp"
#include "homricci/ricci.hpp"

using namespace homricci;

namespace {

double inf_norm(const Eigen::MatrixXd& a) { return a.cwiseAbs().maxCoeff(); }

Matrix5d random_orthogonal(ParamSampler& rng) {
  Matrix5d a;
  for (int i = 0; i < 5; ++i) {
    for (int j = 0; j < 5; ++j) a(i, j) = rng.uniform() - 0.5;
  }
  return Eigen::HouseholderQR<Matrix5d>(a).householderQ();
}

}  // namespace

TEST_SUITE("ricci") {

TEST_CASE("oracle spot values") {
  const MetricParams one1{ModelCase::So3R3, 1, 1, 1, 0, 0};
  Vector5d d1;
  d1 << 0, 0, 0, 1, 1;
  CHECK(inf_norm(ricci_oracle(one1) - Matrix5d(d1.asDiagonal())) < 1e-14);
  CHECK(scalar_curvature(one1) == doctest::Approx(2.0).epsilon(1e-14));

  const MetricParams one2{ModelCase::Sl2C, 1, 1, 1, 0, 0};
  const Matrix5d r2 = ricci_oracle(one2);
  CHECK(r2(0, 0) == doctest::Approx(-15.0));
  for (int i = 1; i < 5; ++i) CHECK(r2(i, i) == doctest::Approx(-0.5));
  CHECK(r2(1, 3) == doctest::Approx(-4.0));  // Ric(B, D)
  CHECK(r2(2, 4) == doctest::Approx(-4.0));  // Ric(C, E)
  CHECK(r2(1, 4) == doctest::Approx(0.0));
  CHECK(scalar_curvature(one2) == doctest::Approx(-17.0).epsilon(1e-14));
}

TEST_CASE("closed-form spot values") {
  const auto r1 = ricci_closed_so3r3({ModelCase::So3R3, 1, 1, 1, 0, 0});
  CHECK(r1.as_vector() == Vector5d(0, 0, 1, 0, 0));
  const auto r2 = ricci_closed_sl2c({ModelCase::Sl2C, 1, 1, 1, 0, 0});
  CHECK(r2.as_vector() == Vector5d(-15, -0.5, -0.5, -4, 0));
}

TEST_CASE("closed-form factor zeros") {
  // alpha = beta kills r_b and r_m in case 1.
  const auto r1 = ricci_closed_so3r3({ModelCase::So3R3, 1.7, 1.7, 0.9, 0.3, -0.4});
  CHECK(r1.r_b == 0.0);
  CHECK(r1.r_m == 0.0);
  // alpha^2 = 16 tau kills r_b and r_c in case 2.
  const auto r2 = ricci_closed_sl2c({ModelCase::Sl2C, 2.0, 1.3, 1.1, 0.3, 0.4});
  CHECK(r2.r_b == doctest::Approx(0.0));
  CHECK(r2.r_c == doctest::Approx(0.0));
}

TEST_CASE("closed forms check their model case") {
  CHECK_THROWS_AS(ricci_closed_so3r3({ModelCase::Sl2C, 1, 1, 1, 0, 0}), InvalidParams);
  CHECK_THROWS_AS(ricci_closed_sl2c({ModelCase::So3R3, 1, 1, 1, 0, 0}), InvalidParams);
  CHECK_THROWS_AS(ricci_closed({ModelCase::So3R3, 1, 1, 1, 1, 1}), InvalidParams);
}

TEST_CASE("so3r3 closed forms agree with the oracle") {
  ParamSampler rng(101);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const MetricParams m = rng.draw(ModelCase::So3R3);
    const Matrix5d ric = ricci_oracle(m);
    worst = std::max(worst, inf_norm(ricci_closed(m).matrix() - ric) /
                                (1.0 + inf_norm(ric)));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("sl2c closed forms agree with the oracle when nu = 0") {
  ParamSampler rng(103);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    MetricParams m = rng.draw(ModelCase::Sl2C);
    m.mu = std::sqrt(m.tau());
    m.nu = 0.0;
    const Matrix5d ric = ricci_oracle(m);
    worst = std::max(worst, inf_norm(ricci_closed(m).matrix() - ric) /
                                (1.0 + inf_norm(ric)));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("sl2c nu terms: oracle differs from the closed forms") {
  // The oracle carries +2 a^2 nu^2 / d^2 in the A slot and (a^2 + 16 b g)
  // in the (B, E) slot; the other three slots coincide.
  ParamSampler rng(107);
  for (int i = 0; i < 200; ++i) {
    const MetricParams m = rng.draw(ModelCase::Sl2C);
    const auto closed = ricci_closed_sl2c(m);
    const auto oracle = RicciComponents::from_matrix(ModelCase::Sl2C, ricci_oracle(m));
    const double a = m.alpha, d = m.block_det();
    const double scale = 1.0 + inf_norm(oracle.as_vector());
    CHECK(std::abs(oracle.r_b - closed.r_b) / scale < 1e-12);
    CHECK(std::abs(oracle.r_c - closed.r_c) / scale < 1e-12);
    CHECK(std::abs(oracle.r_m - closed.r_m) / scale < 1e-12);
    CHECK(std::abs(oracle.r_a - (closed.r_a + 2 * a * a * m.nu * m.nu / (d * d))) /
              scale < 1e-12);
    CHECK(std::abs(oracle.r_n -
                   m.nu * (a * a + 16 * m.beta * m.gamma) / (2 * a * d)) /
              scale < 1e-12);
  }
}

TEST_CASE("oracle output is symmetric with the metric's isotropy pattern") {
  ParamSampler rng(109);
  for (int i = 0; i < 500; ++i) {
    for (ModelCase mc : {ModelCase::So3R3, ModelCase::Sl2C}) {
      const Matrix5d ric = ricci_oracle(rng.draw(mc));
      CHECK(shape_residual(ric) < 1e-10 * (1.0 + inf_norm(ric)));
    }
  }
}

TEST_CASE("oracle does not depend on the orthonormal frame") {
  ParamSampler rng(113);
  for (int i = 0; i < 200; ++i) {
    for (ModelCase mc : {ModelCase::So3R3, ModelCase::Sl2C}) {
      const MetricParams m = rng.draw(mc);
      const Eigen::MatrixXd g = metric_matrix(m);
      const Eigen::MatrixXd f = orthonormal_frame(m).vectors * random_orthogonal(rng);
      const Matrix5d ric = ricci_oracle(m);
      CHECK(inf_norm(ricci_oracle(model_for(mc), g, f) - ric) <
            1e-9 * (1.0 + inf_norm(ric)));
    }
  }
}

TEST_CASE("oracle checks its inputs") {
  const Eigen::MatrixXd id4 = Eigen::MatrixXd::Identity(4, 4);
  CHECK_THROWS_AS(ricci_oracle(model_for(ModelCase::So3R3), id4, id4),
                  DimensionMismatch);
  CHECK_THROWS_AS(ricci_oracle(MetricParams{ModelCase::So3R3, 1, 1, 1, 2, 0}),
                  InvalidParams);
}

TEST_CASE("gauge equivariance of Ricci and scalar curvature") {
  ParamSampler rng(127);
  for (int i = 0; i < 500; ++i) {
    for (ModelCase mc : {ModelCase::So3R3, ModelCase::Sl2C}) {
      const MetricParams m = rng.draw(mc);
      const auto r = gauge_reduce(m);
      const Matrix5d ad = adjoint_matrix(mc, r.t);
      const Matrix5d ric = ricci_oracle(m);
      CHECK(inf_norm(ad.transpose() * ric * ad - ricci_oracle(r.reduced)) <
            1e-9 * (1.0 + inf_norm(ric)));
      const double s = scalar_curvature(m);
      CHECK(std::abs(scalar_curvature(r.reduced) - s) < 1e-10 * (1.0 + std::abs(s)));
    }
  }
}

TEST_CASE("scalar curvature scales inversely with the metric") {
  ParamSampler rng(131);
  for (int i = 0; i < 200; ++i) {
    for (ModelCase mc : {ModelCase::So3R3, ModelCase::Sl2C}) {
      const MetricParams m = rng.draw(mc);
      const double c = 0.1 + 5.0 * rng.uniform();
      const MetricParams cm{mc, c * m.alpha, c * m.beta, c * m.gamma, c * m.mu, c * m.nu};
      CHECK(scalar_curvature(cm) == doctest::Approx(scalar_curvature(m) / c).epsilon(1e-10));
    }
  }
}

TEST_CASE("shape_residual detects pattern violations") {
  Matrix5d a = metric_shaped(1, 2, 3, 0.4, 0.5);
  CHECK(shape_residual(a) == 0.0);
  a(1, 1) += 1e-3;
  CHECK(shape_residual(a) == doctest::Approx(1e-3));
}

}  // TEST_SUITE
