#include "homricci/metric.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <sstream>

#include "homricci/error.hpp"

namespace homricci {

std::string_view to_string(ModelCase c) {
  return c == ModelCase::So3R3 ? "so3r3" : "sl2c";
}

ModelCase parse_model_case(std::string_view s) {
  std::string lower(s);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char ch) { return std::tolower(ch); });
  if (lower == "so3r3" || lower == "1") return ModelCase::So3R3;
  if (lower == "sl2c" || lower == "2") return ModelCase::Sl2C;
  throw InvalidParams("unknown model case '" + std::string(s) +
                      "' (expected so3r3 or sl2c)");
}

bool MetricParams::is_valid() const {
  const bool finite = std::isfinite(alpha) && std::isfinite(beta) &&
                      std::isfinite(gamma) && std::isfinite(mu) &&
                      std::isfinite(nu);
  return finite && alpha > 0.0 && beta > 0.0 && gamma > 0.0 &&
         block_det() > 0.0;
}

void MetricParams::validate() const {
  if (is_valid()) return;
  std::ostringstream os;
  os.precision(17);
  os << "invalid metric parameters (alpha=" << alpha << ", beta=" << beta
     << ", gamma=" << gamma << ", mu=" << mu << ", nu=" << nu << "): ";
  if (!(alpha > 0.0 && beta > 0.0 && gamma > 0.0)) {
    os << "alpha, beta, gamma must be positive";
  } else if (!(block_det() > 0.0)) {
    os << "beta*gamma must exceed mu^2 + nu^2";
  } else {
    os << "non-finite entry";
  }
  throw InvalidParams(os.str());
}

Matrix5d metric_shaped(double a, double b, double c, double m, double n) {
  Matrix5d g;
  // clang-format off
  g << a,   0.0, 0.0, 0.0, 0.0,
       0.0, b,   0.0, m,   n,
       0.0, 0.0, b,   -n,  m,
       0.0, m,   -n,  c,   0.0,
       0.0, n,   m,   0.0, c;
  // clang-format on
  return g;
}

Matrix5d metric_matrix(const MetricParams& m) {
  m.validate();
  return metric_shaped(m.alpha, m.beta, m.gamma, m.mu, m.nu);
}

namespace {

struct Roots {
  double lambda_minus;
  double lambda_plus;
  // lambda_{-,+} - gamma, each computed without cancellation
  double minus_shift;
  double plus_shift;
};

Roots stable_roots(double beta, double gamma, double tau) {
  const double half_gap = 0.5 * (beta - gamma);
  const double s = std::sqrt(tau + half_gap * half_gap);
  Roots r{};
  r.lambda_plus = 0.5 * (beta + gamma) + s;
  r.lambda_minus = (beta * gamma - tau) / r.lambda_plus;
  if (half_gap >= 0.0) {
    r.plus_shift = half_gap + s;
    r.minus_shift = -tau / (half_gap + s);
  } else {
    r.minus_shift = half_gap - s;
    r.plus_shift = tau / (s - half_gap);
  }
  return r;
}

}  // namespace

std::pair<double, double> eigen_lambdas(const MetricParams& m) {
  m.validate();
  if (m.tau() == 0.0) {
    throw InvalidParams("eigen_lambdas requires tau > 0");
  }
  const Roots r = stable_roots(m.beta, m.gamma, m.tau());
  return {r.lambda_minus, r.lambda_plus};
}

double lambda_min(const MetricParams& m) {
  const double half_gap = 0.5 * (m.beta - m.gamma);
  const double lp = 0.5 * (m.beta + m.gamma) +
                    std::sqrt(m.tau() + half_gap * half_gap);
  return m.block_det() / lp;
}

Frame orthonormal_frame(const MetricParams& m) {
  m.validate();
  Frame f;
  const double tau = m.tau();
  f.vectors.setZero();
  f.vectors(0, 0) = 1.0 / std::sqrt(m.alpha);

  if (tau < kTauDiagonalThreshold * (m.beta * m.beta + m.gamma * m.gamma)) {
    f.diagonal = true;
    f.lambda_minus = std::min(m.beta, m.gamma);
    f.lambda_plus = std::max(m.beta, m.gamma);
    const double sb = 1.0 / std::sqrt(m.beta);
    const double sg = 1.0 / std::sqrt(m.gamma);
    f.vectors(1, 1) = sb;
    f.vectors(2, 2) = sb;
    f.vectors(3, 3) = sg;
    f.vectors(4, 4) = sg;
    return f;
  }

  const Roots r = stable_roots(m.beta, m.gamma, tau);
  f.lambda_minus = r.lambda_minus;
  f.lambda_plus = r.lambda_plus;
  f.f_minus = std::sqrt(r.lambda_minus * (tau + r.minus_shift * r.minus_shift));
  f.f_plus = std::sqrt(r.lambda_plus * (tau + r.plus_shift * r.plus_shift));

  auto put = [&](int col, double shift, double norm) {
    // H = (0, shift, 0, mu, nu), B = (0, 0, shift, -nu, mu)
    f.vectors.col(col) << 0.0, shift, 0.0, m.mu, m.nu;
    f.vectors.col(col + 1) << 0.0, 0.0, shift, -m.nu, m.mu;
    f.vectors.col(col) /= norm;
    f.vectors.col(col + 1) /= norm;
  };
  put(1, r.minus_shift, f.f_minus);
  put(3, r.plus_shift, f.f_plus);
  return f;
}

GaugeReduction gauge_reduce(const MetricParams& m) {
  m.validate();
  GaugeReduction out{m, 0.0};
  if (m.model_case == ModelCase::So3R3) {
    const double t = m.mu / m.beta;
    out.t = t;
    out.reduced.gamma = m.gamma + t * t * m.beta - 2.0 * t * m.mu;
    out.reduced.mu = 0.0;
  } else {
    out.t = std::log(m.gamma / m.beta) / 8.0;
    const double mean = std::sqrt(m.beta * m.gamma);
    out.reduced.beta = mean;
    out.reduced.gamma = mean;
  }
  return out;
}

Matrix5d adjoint_matrix(ModelCase c, double t) {
  Matrix5d ad = Matrix5d::Identity();
  if (c == ModelCase::So3R3) {
    ad(1, 3) = -t;
    ad(2, 4) = -t;
  } else {
    const double up = std::exp(2.0 * t);
    const double down = std::exp(-2.0 * t);
    ad(1, 1) = up;
    ad(2, 2) = up;
    ad(3, 3) = down;
    ad(4, 4) = down;
  }
  return ad;
}

}  // namespace homricci
