#pragma once

#include <Eigen/Dense>

#include "homricci/lie_algebra.hpp"
#include "homricci/metric.hpp"

namespace homricci {

/// Ricci tensor in the metric's five-slot shape: r_a, r_b, r_c, r_m, r_n sit
/// where alpha, beta, gamma, mu, nu sit in the metric matrix.
struct RicciComponents {
  ModelCase model_case = ModelCase::So3R3;
  double r_a = 0.0;
  double r_b = 0.0;
  double r_c = 0.0;
  double r_m = 0.0;
  double r_n = 0.0;

  Matrix5d matrix() const { return metric_shaped(r_a, r_b, r_c, r_m, r_n); }
  Vector5d as_vector() const { return {r_a, r_b, r_c, r_m, r_n}; }
  /// Reads the slots (0,0), (1,1), (3,3), (1,3), (1,4).
  static RicciComponents from_matrix(ModelCase c, const Matrix5d& ric);
};

/// The built-in model for a case; constructed once and shared.
const HomogeneousModel& model_for(ModelCase c);

/// Unimodular Ricci formula evaluated in the given g-orthonormal frame
/// (columns of `frame`, complement coordinates):
///
///   Ric(X,Y) = -1/2 B(X,Y) - 1/2 sum_i g([X,X_i]_p, [Y,X_i]_p)
///              + 1/4 sum_{i,j} g([X_i,X_j]_p, X) g([X_i,X_j]_p, Y)
///
/// Returns the matrix Ric(e_a, e_b) over the complement basis.
/// Throws NotUnimodular for non-unimodular algebras.
Eigen::MatrixXd ricci_oracle(const HomogeneousModel& model,
                             const Eigen::MatrixXd& metric,
                             const Eigen::MatrixXd& frame);

/// Same, with the frame from orthonormal_frame(m).
Matrix5d ricci_oracle(const HomogeneousModel& model, const MetricParams& m);
Matrix5d ricci_oracle(const MetricParams& m);

RicciComponents ricci_closed_so3r3(const MetricParams& m);
RicciComponents ricci_closed_sl2c(const MetricParams& m);
/// Dispatches on m.model_case.
RicciComponents ricci_closed(const MetricParams& m);

/// tr(g^{-1} Ric) with Ric from the oracle.
double scalar_curvature(const HomogeneousModel& model, const MetricParams& m);
double scalar_curvature(const MetricParams& m);

/// Largest deviation of a 5x5 matrix from the metric-shaped pattern
/// (symmetry, equal diagonal pairs, [[m, n], [-n, m]] cross block, zeros).
double shape_residual(const Matrix5d& a);

}  // namespace homricci
