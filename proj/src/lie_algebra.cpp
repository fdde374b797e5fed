#include "homricci/lie_algebra.hpp"

#include <algorithm>
#include <cmath>

#include "homricci/error.hpp"

namespace homricci {

StructureConstants::StructureConstants(std::size_t dim,
                                       std::vector<std::string> labels)
    : dim_(dim), labels_(std::move(labels)), c_(dim * dim * dim, 0.0) {
  if (labels_.size() != dim_) {
    throw DimensionMismatch("label count does not match algebra dimension");
  }
}

std::size_t StructureConstants::index_of(const std::string& label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) {
    throw std::out_of_range("unknown basis label: " + label);
  }
  return static_cast<std::size_t>(it - labels_.begin());
}

void StructureConstants::add_bracket(std::size_t i, std::size_t j,
                                     std::size_t k, double value) {
  c_[(i * dim_ + j) * dim_ + k] += value;
  c_[(j * dim_ + i) * dim_ + k] -= value;
}

void StructureConstants::set_entry(std::size_t i, std::size_t j, std::size_t k,
                                   double value) {
  c_[(i * dim_ + j) * dim_ + k] = value;
}

Eigen::MatrixXd StructureConstants::ad(std::size_t i) const {
  const auto n = static_cast<Eigen::Index>(dim_);
  Eigen::MatrixXd m(n, n);
  for (std::size_t col = 0; col < dim_; ++col) {
    for (std::size_t row = 0; row < dim_; ++row) {
      m(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
          (*this)(i, col, row);
    }
  }
  return m;
}

HomogeneousModel build_so3_r3() {
  StructureConstants sc(6, {"E", "c3", "c1", "c2", "F", "G"});
  enum : std::size_t { E, c3, c1, c2, F, G };
  sc.add_bracket(E, c1, c2, -1.0);
  sc.add_bracket(E, c2, c1, 1.0);
  sc.add_bracket(E, F, G, -1.0);
  sc.add_bracket(E, G, F, 1.0);
  sc.add_bracket(c3, F, c1, -1.0);
  sc.add_bracket(c3, G, c2, -1.0);
  sc.add_bracket(c1, F, c3, 1.0);
  sc.add_bracket(c2, G, c3, 1.0);
  sc.add_bracket(F, G, E, -1.0);
  return {"so3r3", std::move(sc), {E}, {c3, c1, c2, F, G}};
}

HomogeneousModel build_sl2c() {
  StructureConstants sc(6, {"X", "A", "B", "C", "D", "E"});
  enum : std::size_t { X, A, B, C, D, E };
  sc.add_bracket(X, B, C, 2.0);
  sc.add_bracket(X, C, B, -2.0);
  sc.add_bracket(X, D, E, 2.0);
  sc.add_bracket(X, E, D, -2.0);
  sc.add_bracket(A, B, B, 2.0);
  sc.add_bracket(A, C, C, 2.0);
  sc.add_bracket(A, D, D, -2.0);
  sc.add_bracket(A, E, E, -2.0);
  sc.add_bracket(B, D, A, 1.0);
  sc.add_bracket(C, D, X, 1.0);
  // E = [[0,0],[-i,0]]; every bracket with E in it has the opposite sign to
  // the one obtained from [[0,0],[i,0]].
  sc.add_bracket(B, E, X, -1.0);
  sc.add_bracket(C, E, A, 1.0);
  return {"sl2c", std::move(sc), {X}, {A, B, C, D, E}};
}

Eigen::VectorXd bracket(const StructureConstants& sc, const Eigen::VectorXd& u,
                        const Eigen::VectorXd& v) {
  const auto n = static_cast<Eigen::Index>(sc.dim());
  if (u.size() != n || v.size() != n) {
    throw DimensionMismatch("bracket operands must have length " +
                            std::to_string(sc.dim()));
  }
  Eigen::VectorXd out = Eigen::VectorXd::Zero(n);
  for (std::size_t i = 0; i < sc.dim(); ++i) {
    const double ui = u(static_cast<Eigen::Index>(i));
    if (ui == 0.0) continue;
    for (std::size_t j = 0; j < sc.dim(); ++j) {
      const double w = ui * v(static_cast<Eigen::Index>(j));
      if (w == 0.0) continue;
      for (std::size_t k = 0; k < sc.dim(); ++k) {
        out(static_cast<Eigen::Index>(k)) += w * sc(i, j, k);
      }
    }
  }
  return out;
}

Eigen::MatrixXd killing_form(const StructureConstants& sc) {
  const std::size_t n = sc.dim();
  Eigen::MatrixXd b(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double tr = 0.0;
      for (std::size_t k = 0; k < n; ++k) {
        for (std::size_t m = 0; m < n; ++m) {
          tr += sc(i, m, k) * sc(j, k, m);
        }
      }
      b(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = tr;
    }
  }
  return b;
}

Eigen::MatrixXd killing_form_on_complement(const HomogeneousModel& model) {
  const Eigen::MatrixXd full = killing_form(model.algebra);
  const auto& p = model.complement_indices;
  const auto n = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXd out(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) {
      out(a, b) = full(static_cast<Eigen::Index>(p[a]),
                       static_cast<Eigen::Index>(p[b]));
    }
  }
  return out;
}

bool is_unimodular(const StructureConstants& sc, double tol) {
  for (std::size_t i = 0; i < sc.dim(); ++i) {
    double tr = 0.0;
    for (std::size_t k = 0; k < sc.dim(); ++k) tr += sc(i, k, k);
    if (std::abs(tr) > tol) return false;
  }
  return true;
}

Eigen::VectorXd jacobiator(const StructureConstants& sc, std::size_t i,
                           std::size_t j, std::size_t l) {
  const auto n = static_cast<Eigen::Index>(sc.dim());
  auto e = [n](std::size_t idx) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    v(static_cast<Eigen::Index>(idx)) = 1.0;
    return v;
  };
  const Eigen::VectorXd ei = e(i), ej = e(j), el = e(l);
  return bracket(sc, ei, bracket(sc, ej, el)) +
         bracket(sc, ej, bracket(sc, el, ei)) +
         bracket(sc, el, bracket(sc, ei, ej));
}

ModelDiagnostics check_model(const HomogeneousModel& model) {
  const auto& sc = model.algebra;
  const std::size_t n = sc.dim();
  ModelDiagnostics d;

  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        d.antisymmetry_residual = std::max(d.antisymmetry_residual,
                                           std::abs(sc(i, j, k) + sc(j, i, k)));
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t l = j + 1; l < n; ++l) {
        d.jacobi_residual = std::max(
            d.jacobi_residual, jacobiator(sc, i, j, l).cwiseAbs().maxCoeff());
      }
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    double tr = 0.0;
    for (std::size_t k = 0; k < n; ++k) tr += sc(i, k, k);
    d.unimodularity_residual = std::max(d.unimodularity_residual, std::abs(tr));
  }

  std::vector<int> seen(n, 0);
  for (auto i : model.isotropy_indices) {
    if (i < n) ++seen[i];
  }
  for (auto i : model.complement_indices) {
    if (i < n) ++seen[i];
  }
  d.partition_ok = std::all_of(seen.begin(), seen.end(),
                               [](int s) { return s == 1; }) &&
                   model.isotropy_indices.size() +
                           model.complement_indices.size() ==
                       n;

  for (auto h : model.isotropy_indices) {
    for (auto a : model.complement_indices) {
      for (auto k : model.isotropy_indices) {
        d.ad_invariance_residual =
            std::max(d.ad_invariance_residual, std::abs(sc(h, a, k)));
      }
    }
  }
  return d;
}

Eigen::VectorXd embed_complement(const HomogeneousModel& model,
                                 const Eigen::VectorXd& p_coords) {
  const auto& p = model.complement_indices;
  if (p_coords.size() != static_cast<Eigen::Index>(p.size())) {
    throw DimensionMismatch("complement vector has wrong length");
  }
  Eigen::VectorXd full =
      Eigen::VectorXd::Zero(static_cast<Eigen::Index>(model.algebra.dim()));
  for (std::size_t a = 0; a < p.size(); ++a) {
    full(static_cast<Eigen::Index>(p[a])) = p_coords(static_cast<Eigen::Index>(a));
  }
  return full;
}

Eigen::VectorXd project_complement(const HomogeneousModel& model,
                                   const Eigen::VectorXd& full) {
  const auto& p = model.complement_indices;
  Eigen::VectorXd out(static_cast<Eigen::Index>(p.size()));
  for (std::size_t a = 0; a < p.size(); ++a) {
    out(static_cast<Eigen::Index>(a)) = full(static_cast<Eigen::Index>(p[a]));
  }
  return out;
}

Eigen::MatrixXd ad_on_complement(const HomogeneousModel& model,
                                 const Eigen::VectorXd& x) {
  const auto& p = model.complement_indices;
  const auto n = static_cast<Eigen::Index>(p.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    Eigen::VectorXd ea = Eigen::VectorXd::Zero(n);
    ea(a) = 1.0;
    m.col(a) = project_complement(
        model, bracket(model.algebra, x, embed_complement(model, ea)));
  }
  return m;
}

}  // namespace homricci
