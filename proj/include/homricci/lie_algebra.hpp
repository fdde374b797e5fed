#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace homricci {

/// A finite-dimensional real Lie algebra given by its structure constants,
/// [e_i, e_j] = sum_k c(i, j, k) e_k.
class StructureConstants {
 public:
  StructureConstants() = default;
  StructureConstants(std::size_t dim, std::vector<std::string> labels);

  std::size_t dim() const { return dim_; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::size_t index_of(const std::string& label) const;

  double operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * dim_ + j) * dim_ + k];
  }

  /// Sets [e_i, e_j] += value * e_k and the antisymmetric partner.
  void add_bracket(std::size_t i, std::size_t j, std::size_t k, double value);
  /// Raw write to a single entry; does not touch the partner entry.
  void set_entry(std::size_t i, std::size_t j, std::size_t k, double value);

  /// Matrix of ad(e_i) in the basis: column m is [e_i, e_m].
  Eigen::MatrixXd ad(std::size_t i) const;

 private:
  std::size_t dim_ = 0;
  std::vector<std::string> labels_;
  std::vector<double> c_;
};

/// A reductive pair (g, h) with complement p; the complement ordering is the
/// ordering used by every metric-shaped 5x5 matrix in the library.
struct HomogeneousModel {
  std::string name;
  StructureConstants algebra;
  std::vector<std::size_t> isotropy_indices;
  std::vector<std::size_t> complement_indices;
};

/// so(3) ⋉ R^3 with basis (E, c3, c1, c2, F, G), isotropy span(E).
HomogeneousModel build_so3_r3();

/// sl(2,C) as a real algebra with basis (X, A, B, C, D, E), isotropy span(X).
/// E is the matrix [[0,0],[-i,0]]; with this orientation the Killing form on p
/// is the familiar table with B(B,D) = B(C,E) = 8 and the two 2-dimensional
/// isotropy representations rotate in the same sense.
HomogeneousModel build_sl2c();

Eigen::VectorXd bracket(const StructureConstants& sc, const Eigen::VectorXd& u,
                        const Eigen::VectorXd& v);
inline Eigen::VectorXd bracket(const HomogeneousModel& model,
                               const Eigen::VectorXd& u,
                               const Eigen::VectorXd& v) {
  return bracket(model.algebra, u, v);
}

/// B(X, Y) = tr(ad X ∘ ad Y) on the whole algebra.
Eigen::MatrixXd killing_form(const StructureConstants& sc);
inline Eigen::MatrixXd killing_form(const HomogeneousModel& model) {
  return killing_form(model.algebra);
}

/// Killing form restricted to the complement, in complement order.
Eigen::MatrixXd killing_form_on_complement(const HomogeneousModel& model);

bool is_unimodular(const StructureConstants& sc, double tol = 1e-12);
inline bool is_unimodular(const HomogeneousModel& model, double tol = 1e-12) {
  return is_unimodular(model.algebra, tol);
}

/// [e_i,[e_j,e_l]] + [e_j,[e_l,e_i]] + [e_l,[e_i,e_j]] as a coefficient vector.
Eigen::VectorXd jacobiator(const StructureConstants& sc, std::size_t i,
                           std::size_t j, std::size_t l);

struct ModelDiagnostics {
  double jacobi_residual = 0.0;
  double antisymmetry_residual = 0.0;
  /// Largest isotropy component of [h, p] over isotropy generators h.
  double ad_invariance_residual = 0.0;
  /// max_i |tr ad(e_i)|
  double unimodularity_residual = 0.0;
  bool partition_ok = false;

  bool ok(double tol = 1e-12) const {
    return partition_ok && jacobi_residual <= tol &&
           antisymmetry_residual <= tol && ad_invariance_residual <= tol;
  }
};

ModelDiagnostics check_model(const HomogeneousModel& model);

/// ad(x) restricted to p -> p (p-projection of [x, p]) in complement order.
/// x is a full coefficient vector over the algebra.
Eigen::MatrixXd ad_on_complement(const HomogeneousModel& model,
                                 const Eigen::VectorXd& x);

/// Embeds a complement-coordinate vector into full algebra coordinates.
Eigen::VectorXd embed_complement(const HomogeneousModel& model,
                                 const Eigen::VectorXd& p_coords);
/// Drops the isotropy components of a full coefficient vector.
Eigen::VectorXd project_complement(const HomogeneousModel& model,
                                   const Eigen::VectorXd& full);

}  // namespace homricci
