// Spectra of Riemannian products by pairwise eigenvalue sums.
#ifndef SPECTRALFLOW_MANIFOLDS_PRODUCT_HPP
#define SPECTRALFLOW_MANIFOLDS_PRODUCT_HPP

#include <stdexcept>
#include <vector>

#include "spectralflow/core/spectrum.hpp"

namespace spectralflow {

/// Spectrum of M_a x M_b: eigenvalues lambda_a + lambda_b with
/// multiplicities m_a * m_b, complete below `cutoff`. Completeness of the
/// sum requires cutoff <= min(a.cutoff, b.cutoff), since a missing factor
/// mode below either cutoff could pair with a zero mode.
template <class Real>
Spectrum<Real> product_spectrum(const Spectrum<Real>& a, const Spectrum<Real>& b, Real cutoff) {
  a.validate();
  b.validate();
  if (!(cutoff > Real(0))) throw std::invalid_argument("product_spectrum: cutoff must be > 0");
  const Real guaranteed = std::min(a.complete() ? cutoff : a.cutoff,
                                   b.complete() ? cutoff : b.cutoff);
  if (cutoff > guaranteed)
    throw std::invalid_argument(
        "product_spectrum: cutoff exceeds the completeness guarantee min(a.cutoff, b.cutoff)");

  std::vector<SpectrumEntry<Real>> raw;
  for (const auto& ea : a.entries) {
    if (ea.eigenvalue > cutoff) break;
    for (const auto& eb : b.entries) {
      const Real sum = ea.eigenvalue + eb.eigenvalue;
      if (sum > cutoff) break;
      raw.push_back({sum, ea.multiplicity * eb.multiplicity});
    }
  }

  Spectrum<Real> out;
  out.dim = a.dim + b.dim;
  const bool discretized =
      a.source == SpectrumSource::discretized || b.source == SpectrumSource::discretized;
  out.entries = merge_entries(std::move(raw), discretized ? Real(1e-9) : Real(1e-12));
  out.zero_modes = a.zero_modes * b.zero_modes;
  out.source = discretized ? SpectrumSource::discretized : SpectrumSource::exact;
  out.cutoff = cutoff;
  out.validate();
  return out;
}

}  // namespace spectralflow

#endif
