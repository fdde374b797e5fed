#pragma once

#include <string>
#include <string_view>
#include <utility>

#include <Eigen/Dense>

namespace homricci {

using Matrix5d = Eigen::Matrix<double, 5, 5>;
using Vector5d = Eigen::Matrix<double, 5, 1>;

enum class ModelCase { So3R3, Sl2C };

std::string_view to_string(ModelCase c);
/// Accepts "so3r3" / "sl2c" (case-insensitive) and "1" / "2".
ModelCase parse_model_case(std::string_view s);

/// Ad(H)-invariant inner product on p, in the complement basis
/// (c3, c1, c2, F, G) resp. (A, B, C, D, E):
///
///   | alpha  0     0     0     0    |
///   | 0      beta  0     mu    nu   |
///   | 0      0     beta  -nu   mu   |
///   | 0      mu    -nu   gamma 0    |
///   | 0      nu    mu    0     gamma|
struct MetricParams {
  ModelCase model_case = ModelCase::So3R3;
  double alpha = 1.0;
  double beta = 1.0;
  double gamma = 1.0;
  double mu = 0.0;
  double nu = 0.0;

  double tau() const { return mu * mu + nu * nu; }
  /// beta*gamma - tau; positive iff the 4x4 block is positive definite.
  double block_det() const { return beta * gamma - tau(); }
  bool is_valid() const;
  /// Throws InvalidParams with a description when !is_valid().
  void validate() const;
  Vector5d as_vector() const { return {alpha, beta, gamma, mu, nu}; }
  static MetricParams from_vector(ModelCase c, const Vector5d& v) {
    return {c, v(0), v(1), v(2), v(3), v(4)};
  }
};

/// g-orthonormal basis of p. Columns of `vectors` are, in order, the
/// normalized first basis direction, H-/f-, B-/f-, H+/f+, B+/f+.
/// For tau = 0 the diagonal frame is used and f_minus = f_plus = 0.
struct Frame {
  double lambda_minus = 0.0;
  double lambda_plus = 0.0;
  double f_minus = 0.0;
  double f_plus = 0.0;
  bool diagonal = false;
  Matrix5d vectors = Matrix5d::Identity();
};

Matrix5d metric_matrix(const MetricParams& m);

/// Assembles a metric-shaped matrix from the five slot values.
Matrix5d metric_shaped(double a, double b, double c, double m, double n);

/// Roots of (lambda - beta)(lambda - gamma) = tau, smaller first. Throws
/// InvalidParams when tau == 0 (use the diagonal branch instead).
std::pair<double, double> eigen_lambdas(const MetricParams& m);

/// Smallest eigenvalue of the 4x4 block; equals min(beta, gamma) when tau=0.
/// Does not validate, so it can be evaluated on degenerate states.
double lambda_min(const MetricParams& m);

Frame orthonormal_frame(const MetricParams& m);

/// Below this relative size tau is treated as zero by the frame builder.
inline constexpr double kTauDiagonalThreshold = 1e-14;

struct GaugeReduction {
  MetricParams reduced;
  double t = 0.0;
};

/// so3r3: conjugation by exp(t c3), t = mu/beta, removes mu.
/// sl2c:  conjugation by exp(t A), t = log(gamma/beta)/8, equalizes beta, gamma.
GaugeReduction gauge_reduce(const MetricParams& m);

/// Ad(exp(t c3)) resp. Ad(exp(t A)) restricted to p.
Matrix5d adjoint_matrix(ModelCase c, double t);

}  // namespace homricci
