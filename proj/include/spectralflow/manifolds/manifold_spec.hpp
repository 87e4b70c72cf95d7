// Model closed manifolds: flat tori, round spheres, Riemannian products
// and conformally flat 2-tori. These are the concrete metric families the
// rest of the toolkit runs on.
#ifndef SPECTRALFLOW_MANIFOLDS_MANIFOLD_SPEC_HPP
#define SPECTRALFLOW_MANIFOLDS_MANIFOLD_SPEC_HPP

#include <Eigen/Dense>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <variant>

namespace spectralflow {

/// Flat torus R^n / L with lattice basis vectors as matrix columns.
template <class Real>
struct FlatTorus {
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> basis;

  int dim() const { return static_cast<int>(basis.cols()); }

  void validate() const {
    if (basis.rows() != basis.cols() || basis.rows() < 1)
      throw std::invalid_argument("FlatTorus: basis must be square and nonempty");
    Real scale = Real(1);
    for (int j = 0; j < basis.cols(); ++j) scale *= basis.col(j).norm();
    if (!(std::abs(basis.determinant()) > Real(1e-12) * scale))
      throw std::invalid_argument("FlatTorus: basis vectors are linearly dependent");
  }
};

/// Round sphere S^n of radius r with the induced metric.
template <class Real>
struct RoundSphere {
  int n = 2;
  Real radius = Real(1);

  int dim() const { return n; }

  void validate() const {
    if (n < 1) throw std::invalid_argument("RoundSphere: dimension must be >= 1");
    if (!(radius > Real(0))) throw std::invalid_argument("RoundSphere: radius must be > 0");
  }
};

/// Conformally flat 2-torus g = e^{2u} g0 with u sampled on a periodic
/// N1 x N2 grid over the unit cell (row index = first lattice coordinate).
template <class Real>
struct ConformalTorus {
  Eigen::Matrix<Real, 2, 2> basis;
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> u;

  int dim() const { return 2; }

  void validate() const {
    FlatTorus<Real>{basis}.validate();
    if (u.rows() < 8 || u.cols() < 8)
      throw std::invalid_argument("ConformalTorus: grid resolution must be >= 8 per period");
    if (!u.allFinite())
      throw std::invalid_argument("ConformalTorus: conformal factor must be finite");
  }
};

template <class Real>
struct ManifoldSpec;

/// Riemannian product of two model manifolds.
template <class Real>
struct ProductSpec {
  std::shared_ptr<const ManifoldSpec<Real>> a;
  std::shared_ptr<const ManifoldSpec<Real>> b;
};

template <class Real>
struct ManifoldSpec {
  std::variant<FlatTorus<Real>, RoundSphere<Real>, ProductSpec<Real>, ConformalTorus<Real>> kind;

  int dim() const {
    return std::visit(
        [](const auto& k) -> int {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, ProductSpec<Real>>)
            return k.a->dim() + k.b->dim();
          else
            return k.dim();
        },
        kind);
  }
};

template <class Real>
ManifoldSpec<Real> make_product(ManifoldSpec<Real> a, ManifoldSpec<Real> b) {
  ProductSpec<Real> p{std::make_shared<ManifoldSpec<Real>>(std::move(a)),
                      std::make_shared<ManifoldSpec<Real>>(std::move(b))};
  return ManifoldSpec<Real>{std::move(p)};
}

/// Square flat torus of side L in n dimensions.
template <class Real>
ManifoldSpec<Real> make_square_torus(int n, Real side) {
  using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  FlatTorus<Real> t{Mat::Identity(n, n) * side};
  t.validate();
  return ManifoldSpec<Real>{std::move(t)};
}

/// Circle of circumference L, as the 1-dimensional flat torus.
template <class Real>
ManifoldSpec<Real> make_circle(Real circumference) {
  return make_square_torus<Real>(1, circumference);
}

template <class Real>
ManifoldSpec<Real> make_sphere(int n, Real radius) {
  RoundSphere<Real> s{n, radius};
  s.validate();
  return ManifoldSpec<Real>{s};
}

}  // namespace spectralflow

#endif
