// The Polyakov-action operator pieces on a flat periodic worldsheet grid:
// the potential V = (1/2)(|grad phi|^2 + Lap phi) of the conformal-factor
// form g = e^{phi} g0, and the discrete integration-by-parts identity
//   <d phi, g d phi> = -<phi, g Lap phi> + (1/2) <phi, (Lap g) phi>,
// which holds exactly (to roundoff) with forward-difference gradients,
// staggered-averaged g, and the 3-point Laplacian per direction.
#ifndef SPECTRALFLOW_FLOW_POLYAKOV_HPP
#define SPECTRALFLOW_FLOW_POLYAKOV_HPP

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

namespace spectralflow {

namespace detail {

template <class Real>
void check_worldsheet_grid(const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& f,
                           Real spacing) {
  if (f.rows() < 8 || f.cols() < 8)
    throw std::invalid_argument("worldsheet grid resolution must be >= 8 per period");
  if (!(spacing > Real(0))) throw std::invalid_argument("grid spacing must be > 0");
}

// Analyst's Laplacian (negative spectrum) on the periodic grid.
template <class Real>
Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> laplacian_5pt(
    const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& f, Real h) {
  const Eigen::Index n1 = f.rows(), n2 = f.cols();
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> out(n1, n2);
  for (Eigen::Index i = 0; i < n1; ++i) {
    const Eigen::Index ip = (i + 1) % n1, im = (i + n1 - 1) % n1;
    for (Eigen::Index j = 0; j < n2; ++j) {
      const Eigen::Index jp = (j + 1) % n2, jm = (j + n2 - 1) % n2;
      out(i, j) =
          (f(ip, j) + f(im, j) + f(i, jp) + f(i, jm) - Real(4) * f(i, j)) / (h * h);
    }
  }
  return out;
}

}  // namespace detail

/// Potential of the Polyakov operator for g = e^{phi} g0:
/// V = (1/2)(d^mu phi d_mu phi + Lap phi), by central differences.
template <class Real>
Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> polyakov_potential(
    const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& phi, Real spacing) {
  detail::check_worldsheet_grid(phi, spacing);
  const Eigen::Index n1 = phi.rows(), n2 = phi.cols();
  const Real h = spacing;
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> out(n1, n2);
  for (Eigen::Index i = 0; i < n1; ++i) {
    const Eigen::Index ip = (i + 1) % n1, im = (i + n1 - 1) % n1;
    for (Eigen::Index j = 0; j < n2; ++j) {
      const Eigen::Index jp = (j + 1) % n2, jm = (j + n2 - 1) % n2;
      const Real dx = (phi(ip, j) - phi(im, j)) / (Real(2) * h);
      const Real dy = (phi(i, jp) - phi(i, jm)) / (Real(2) * h);
      const Real lap =
          (phi(ip, j) + phi(im, j) + phi(i, jp) + phi(i, jm) - Real(4) * phi(i, j)) / (h * h);
      out(i, j) = (dx * dx + dy * dy + lap) / Real(2);
    }
  }
  return out;
}

/// Relative residual |LHS - RHS| / max(|LHS|, |RHS|) of the discrete
/// integration-by-parts identity. Summation-by-parts consistent stencils
/// make the residual pure roundoff (<= 1e-12 relative).
template <class Real>
Real polyakov_identity_check(const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& phi,
                             const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& g,
                             Real spacing) {
  detail::check_worldsheet_grid(phi, spacing);
  if (g.rows() != phi.rows() || g.cols() != phi.cols())
    throw std::invalid_argument("polyakov_identity_check: phi/g shape mismatch");

  const Eigen::Index n1 = phi.rows(), n2 = phi.cols();
  const Real h = spacing;
  const Real cell = h * h;

  Real lhs = Real(0);
  for (Eigen::Index i = 0; i < n1; ++i) {
    const Eigen::Index ip = (i + 1) % n1;
    for (Eigen::Index j = 0; j < n2; ++j) {
      const Eigen::Index jp = (j + 1) % n2;
      const Real dphi_x = (phi(ip, j) - phi(i, j)) / h;
      const Real dphi_y = (phi(i, jp) - phi(i, j)) / h;
      lhs += (g(i, j) + g(ip, j)) / Real(2) * dphi_x * dphi_x * cell;
      lhs += (g(i, j) + g(i, jp)) / Real(2) * dphi_y * dphi_y * cell;
    }
  }

  const auto lap_phi = detail::laplacian_5pt(phi, h);
  const auto lap_g = detail::laplacian_5pt(g, h);
  Real rhs = Real(0), magnitude = std::abs(lhs);
  for (Eigen::Index i = 0; i < n1; ++i)
    for (Eigen::Index j = 0; j < n2; ++j) {
      const Real bulk = -phi(i, j) * g(i, j) * lap_phi(i, j) * cell;
      const Real metric = phi(i, j) * phi(i, j) * lap_g(i, j) / Real(2) * cell;
      rhs += bulk + metric;
      magnitude += std::abs(bulk) + std::abs(metric);
    }
  // Relative to the size of the data, not of the (possibly cancelling) sides.
  return std::abs(lhs - rhs) / std::max(magnitude, Real(1e-300));
}

}  // namespace spectralflow

#endif
