// Closed-form integrated curvature invariants for the model manifolds.
// Spheres and flat tori have parallel curvature, so products of them keep
// pointwise-constant invariants and every integral is elementary. The
// conformal 2-torus uses R = -2 e^{-2u} Lap_flat u on the grid.
#ifndef SPECTRALFLOW_MANIFOLDS_CURVATURE_HPP
#define SPECTRALFLOW_MANIFOLDS_CURVATURE_HPP

#include <cmath>
#include <numbers>
#include <optional>

#include "spectralflow/core/errors.hpp"
#include "spectralflow/manifolds/conformal_torus.hpp"
#include "spectralflow/manifolds/manifold_spec.hpp"

namespace spectralflow {

/// Integrated curvature invariants. int_E4 and int_W2 follow the
/// four-dimensional decomposition and are populated only when dim == 4
/// (zero otherwise); int_LapR vanishes on any closed manifold.
template <class Real>
struct CurvatureData {
  int dim = 0;
  Real vol = Real(0);
  Real int_R = Real(0);
  Real int_R2 = Real(0);
  Real int_Ric2 = Real(0);
  Real int_Riem2 = Real(0);
  Real int_LapR = Real(0);
  Real int_E4 = Real(0);
  Real int_W2 = Real(0);
  std::optional<int> euler_char;
};

namespace detail {

// Pointwise-constant curvature data; the product rule below is exact for
// parallel curvature tensors (true for spheres, tori, and their products).
template <class Real>
struct PointwiseCurvature {
  int dim = 0;
  Real vol = Real(0);
  Real scalar = Real(0);  // R
  Real ric2 = Real(0);    // |Ric|^2
  Real riem2 = Real(0);   // |Riem|^2
};

template <class Real>
Real sphere_volume(int n, Real r) {
  return Real(2) * std::pow(std::numbers::pi_v<Real>, Real(n + 1) / Real(2)) /
         std::tgamma(Real(n + 1) / Real(2)) * std::pow(r, Real(n));
}

template <class Real>
PointwiseCurvature<Real> pointwise_curvature(const ManifoldSpec<Real>& spec) {
  return std::visit(
      [](const auto& k) -> PointwiseCurvature<Real> {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, FlatTorus<Real>>) {
          k.validate();
          return {k.dim(), std::abs(k.basis.determinant()), Real(0), Real(0), Real(0)};
        } else if constexpr (std::is_same_v<K, RoundSphere<Real>>) {
          k.validate();
          const int n = k.n;
          const Real r2 = k.radius * k.radius;
          PointwiseCurvature<Real> out;
          out.dim = n;
          out.vol = sphere_volume(n, k.radius);
          out.scalar = Real(n) * Real(n - 1) / r2;
          out.ric2 = Real(n) * Real(n - 1) * Real(n - 1) / (r2 * r2);
          out.riem2 = Real(2) * Real(n) * Real(n - 1) / (r2 * r2);
          return out;
        } else if constexpr (std::is_same_v<K, ProductSpec<Real>>) {
          const auto a = pointwise_curvature(*k.a);
          const auto b = pointwise_curvature(*k.b);
          PointwiseCurvature<Real> out;
          out.dim = a.dim + b.dim;
          out.vol = a.vol * b.vol;
          out.scalar = a.scalar + b.scalar;
          out.ric2 = a.ric2 + b.ric2;
          out.riem2 = a.riem2 + b.riem2;
          return out;
        } else {
          throw UnsupportedManifoldError(
              "curvature_invariants: conformal tori cannot appear in products");
        }
      },
      spec.kind);
}

template <class Real>
CurvatureData<Real> conformal_torus_curvature(const ConformalTorus<Real>& ct) {
  ct.validate();
  const FlatTorusLaplacian<Real> lap(ct.basis, ct.u.rows(), ct.u.cols());
  const auto lap_u = lap.apply(ct.u);
  const Real cell = lap.cell_volume();

  CurvatureData<Real> out;
  out.dim = 2;
  Real vol = Real(0), int_r = Real(0), int_r2 = Real(0);
  for (Eigen::Index i = 0; i < ct.u.rows(); ++i) {
    for (Eigen::Index j = 0; j < ct.u.cols(); ++j) {
      const Real e2u = std::exp(Real(2) * ct.u(i, j));
      // R = -2 e^{-2u} (analyst's Laplacian of u) = +2 e^{-2u} Lap0 u
      const Real r_pt = Real(2) * lap_u(i, j) / e2u;
      vol += e2u * cell;
      int_r += r_pt * e2u * cell;        // = 2 * Lap0 u * cell, sums to zero
      int_r2 += r_pt * r_pt * e2u * cell;
    }
  }
  out.vol = vol;
  out.int_R = int_r;
  out.int_R2 = int_r2;
  out.int_Ric2 = int_r2 / Real(2);  // dim 2: Ric = (R/2) g
  out.int_Riem2 = int_r2;           // dim 2: |Riem|^2 = R^2
  out.euler_char = 0;
  return out;
}

}  // namespace detail

template <class Real>
CurvatureData<Real> curvature_invariants(const ManifoldSpec<Real>& spec) {
  if (const auto* ct = std::get_if<ConformalTorus<Real>>(&spec.kind))
    return detail::conformal_torus_curvature(*ct);

  const auto pt = detail::pointwise_curvature(spec);
  CurvatureData<Real> out;
  out.dim = pt.dim;
  out.vol = pt.vol;
  out.int_R = pt.scalar * pt.vol;
  out.int_R2 = pt.scalar * pt.scalar * pt.vol;
  out.int_Ric2 = pt.ric2 * pt.vol;
  out.int_Riem2 = pt.riem2 * pt.vol;
  if (pt.dim == 4) {
    const Real e4 = pt.riem2 - Real(4) * pt.ric2 + pt.scalar * pt.scalar;
    const Real w2 = pt.riem2 - Real(2) * pt.ric2 + pt.scalar * pt.scalar / Real(3);
    out.int_E4 = e4 * pt.vol;
    out.int_W2 = w2 * pt.vol;
    const Real pi = std::numbers::pi_v<Real>;
    out.euler_char = static_cast<int>(std::llround(double(out.int_E4 / (Real(32) * pi * pi))));
  } else if (pt.dim == 2) {
    const Real pi = std::numbers::pi_v<Real>;
    out.euler_char = static_cast<int>(std::llround(double(out.int_R / (Real(4) * pi))));
  } else if (pt.dim % 2 == 1) {
    out.euler_char = 0;
  }
  return out;
}

}  // namespace spectralflow

#endif
