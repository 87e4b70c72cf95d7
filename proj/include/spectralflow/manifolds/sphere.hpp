// Exact round-sphere spectra.
#ifndef SPECTRALFLOW_MANIFOLDS_SPHERE_HPP
#define SPECTRALFLOW_MANIFOLDS_SPHERE_HPP

#include <cstdint>
#include <limits>
#include <stdexcept>

#include "spectralflow/core/spectrum.hpp"
#include "spectralflow/manifolds/manifold_spec.hpp"

namespace spectralflow {

/// Dimension of the space of degree-k spherical harmonics on S^n:
/// C(n+k, n) - C(n+k-2, n). Exact integer arithmetic; throws on overflow.
inline std::int64_t harmonic_multiplicity(int n, int k) {
  if (n < 1 || k < 0) throw std::invalid_argument("harmonic_multiplicity: n >= 1, k >= 0");
  auto binom = [](std::int64_t top, int r) -> std::int64_t {
    if (top < r) return 0;
    std::int64_t num = 1;
    for (int i = 1; i <= r; ++i) {
      const std::int64_t factor = top - r + i;
      if (num > std::numeric_limits<std::int64_t>::max() / (factor > 0 ? factor : 1))
        throw std::overflow_error("harmonic_multiplicity: multiplicity overflows int64");
      num = num * factor / i;  // exact: product of i consecutive integers divisible by i!
    }
    return num;
  };
  return binom(std::int64_t(n) + k, n) - binom(std::int64_t(n) + k - 2, n);
}

/// Laplace-Beltrami spectrum of S^n with radius r, levels k = 0..k_max:
/// lambda_k = k (k + n - 1) / r^2 with the harmonic multiplicities.
template <class Real>
Spectrum<Real> sphere_spectrum(int n, Real radius, int k_max) {
  if (n < 1) throw std::invalid_argument("sphere_spectrum: dimension must be >= 1");
  if (!(radius > Real(0))) throw std::invalid_argument("sphere_spectrum: radius must be > 0");
  if (k_max < 0) throw std::invalid_argument("sphere_spectrum: k_max must be >= 0");

  Spectrum<Real> out;
  out.dim = n;
  out.entries.reserve(static_cast<std::size_t>(k_max) + 1);
  const Real r2 = radius * radius;
  for (int k = 0; k <= k_max; ++k) {
    const Real lambda = Real(k) * Real(k + n - 1) / r2;
    out.entries.push_back({lambda, harmonic_multiplicity(n, k)});
  }
  out.zero_modes = 1;
  out.source = SpectrumSource::exact;
  out.cutoff = out.entries.back().eigenvalue;
  out.validate();
  return out;
}

template <class Real>
Spectrum<Real> sphere_spectrum(const RoundSphere<Real>& sphere, int k_max) {
  return sphere_spectrum(sphere.n, sphere.radius, k_max);
}

}  // namespace spectralflow

#endif
