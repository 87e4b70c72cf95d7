// Exact flat-torus spectra by dual-lattice enumeration.
#ifndef SPECTRALFLOW_MANIFOLDS_TORUS_HPP
#define SPECTRALFLOW_MANIFOLDS_TORUS_HPP

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <vector>

#include "spectralflow/core/spectrum.hpp"
#include "spectralflow/manifolds/manifold_spec.hpp"

namespace spectralflow {

namespace detail {

template <class Real>
void enumerate_lattice(const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& q_form,
                       const std::vector<long>& bounds, std::vector<long>& m, int axis,
                       Real cutoff, std::vector<SpectrumEntry<Real>>& raw) {
  const int n = static_cast<int>(bounds.size());
  if (axis == n) {
    // Quadratic form in exact integer coordinates; for integer-scaled Gram
    // matrices the arithmetic is exact in double precision.
    Real q = Real(0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) q += q_form(i, j) * Real(m[i]) * Real(m[j]);
    if (q <= cutoff) raw.push_back({q, 1});
    return;
  }
  for (long v = -bounds[axis]; v <= bounds[axis]; ++v) {
    m[axis] = v;
    enumerate_lattice(q_form, bounds, m, axis + 1, cutoff, raw);
  }
}

}  // namespace detail

/// Laplace-Beltrami spectrum of the flat torus with the given lattice
/// basis (columns), complete below `cutoff`. Eigenvalues are
/// 4 pi^2 |w|^2 over dual lattice vectors w; the constant mode gives one
/// zero mode.
template <class Real>
Spectrum<Real> torus_spectrum(const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& basis,
                              Real cutoff) {
  using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  FlatTorus<Real>{basis}.validate();
  if (!(cutoff > Real(0))) throw std::invalid_argument("torus_spectrum: cutoff must be > 0");

  const int n = static_cast<int>(basis.cols());
  const Real two_pi = Real(2) * std::numbers::pi_v<Real>;
  const Mat gram = basis.transpose() * basis;           // direct Gram
  const Mat q_form = Real(4) * std::numbers::pi_v<Real> * std::numbers::pi_v<Real> *
                     gram.inverse();                    // lambda = m^T q_form m

  // Integer coordinates of dual vectors inside the cutoff ellipsoid are
  // bounded by |m_i| <= sqrt(cutoff) |a_i| / (2 pi).
  const Real r = std::sqrt(cutoff) / two_pi;
  std::vector<long> bounds(n);
  double total = 1;
  for (int i = 0; i < n; ++i) {
    bounds[i] = static_cast<long>(std::floor(double(r * basis.col(i).norm()))) + 1;
    total *= 2.0 * double(bounds[i]) + 1.0;
  }
  if (total > 5e8)
    throw std::invalid_argument("torus_spectrum: cutoff enumerates more than 5e8 lattice points");

  std::vector<SpectrumEntry<Real>> raw;
  raw.reserve(static_cast<std::size_t>(std::min(total, 1e7)));
  std::vector<long> m(n, 0);
  detail::enumerate_lattice(q_form, bounds, m, 0, cutoff, raw);

  Spectrum<Real> out;
  out.dim = n;
  out.entries = merge_entries(std::move(raw), Real(1e-12));
  out.zero_modes = 1;
  out.source = SpectrumSource::exact;
  out.cutoff = cutoff;
  out.validate();
  return out;
}

template <class Real>
Spectrum<Real> torus_spectrum(const FlatTorus<Real>& torus, Real cutoff) {
  return torus_spectrum(torus.basis, cutoff);
}

}  // namespace spectralflow

#endif
