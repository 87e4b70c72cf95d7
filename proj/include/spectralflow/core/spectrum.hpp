// Spectrum: the sorted (eigenvalue, multiplicity) list every other module
// consumes, together with the Weyl-law tail machinery used for truncation
// error bounds.
#ifndef SPECTRALFLOW_CORE_SPECTRUM_HPP
#define SPECTRALFLOW_CORE_SPECTRUM_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include "spectralflow/core/special.hpp"

namespace spectralflow {

enum class SpectrumSource { exact, discretized };

template <class Real>
struct SpectrumEntry {
  Real eigenvalue;
  std::int64_t multiplicity;
};

/// Eigenvalues of a nonnegative operator on a closed manifold, strictly
/// increasing, complete below `cutoff`. The zero eigenvalue is listed iff
/// zero_modes > 0, with multiplicity equal to zero_modes. A cutoff of
/// +infinity marks a spectrum that is complete as a whole (toy systems).
template <class Real>
struct Spectrum {
  int dim = 0;
  std::vector<SpectrumEntry<Real>> entries;
  std::int64_t zero_modes = 0;
  SpectrumSource source = SpectrumSource::exact;
  Real cutoff = Real(0);

  bool complete() const { return std::isinf(cutoff); }

  std::int64_t total_multiplicity() const {
    std::int64_t m = 0;
    for (const auto& e : entries) m += e.multiplicity;
    return m;
  }

  /// Smallest positive eigenvalue; throws if none is listed.
  Real min_positive() const {
    for (const auto& e : entries)
      if (e.eigenvalue > Real(0)) return e.eigenvalue;
    throw std::invalid_argument("Spectrum: no positive eigenvalue listed");
  }

  /// Counting function N(lambda): modes with eigenvalue <= lambda,
  /// zero modes included.
  std::int64_t counting(Real lambda) const {
    std::int64_t n = 0;
    for (const auto& e : entries) {
      if (e.eigenvalue > lambda) break;
      n += e.multiplicity;
    }
    return n;
  }

  void validate() const {
    if (dim < 0) throw std::invalid_argument("Spectrum: negative dimension");
    Real prev = -std::numeric_limits<Real>::infinity();
    for (const auto& e : entries) {
      if (!(e.eigenvalue >= Real(0))) throw std::invalid_argument("Spectrum: negative eigenvalue");
      if (!(e.eigenvalue > prev)) throw std::invalid_argument("Spectrum: entries not strictly increasing");
      if (e.multiplicity <= 0) throw std::invalid_argument("Spectrum: nonpositive multiplicity");
      if (!complete() && e.eigenvalue > cutoff)
        throw std::invalid_argument("Spectrum: entry above cutoff");
      prev = e.eigenvalue;
    }
    const bool has_zero = !entries.empty() && entries.front().eigenvalue == Real(0);
    if (has_zero != (zero_modes > 0))
      throw std::invalid_argument("Spectrum: zero entry inconsistent with zero_modes");
    if (has_zero && entries.front().multiplicity != zero_modes)
      throw std::invalid_argument("Spectrum: zero multiplicity != zero_modes");
  }
};

/// Sort raw (eigenvalue, multiplicity) pairs and aggregate values equal
/// within `rel_tol` (absolute near zero). Exact constructions pass a tight
/// tolerance; discretized spectra use 1e-9.
template <class Real>
std::vector<SpectrumEntry<Real>> merge_entries(std::vector<SpectrumEntry<Real>> raw,
                                               Real rel_tol) {
  std::sort(raw.begin(), raw.end(),
            [](const SpectrumEntry<Real>& a, const SpectrumEntry<Real>& b) {
              return a.eigenvalue < b.eigenvalue;
            });
  std::vector<SpectrumEntry<Real>> out;
  for (const auto& e : raw) {
    if (!out.empty() &&
        e.eigenvalue - out.back().eigenvalue <= rel_tol * std::max(Real(1), e.eigenvalue)) {
      out.back().multiplicity += e.multiplicity;
    } else {
      out.push_back(e);
    }
  }
  return out;
}

/// Spectrum of D + c given the spectrum of D (c >= 0, or any c that keeps
/// the spectrum nonnegative). A former zero mode becomes a positive entry,
/// so the shifted operator is kernel-free when c > 0.
template <class Real>
Spectrum<Real> shift_spectrum(const Spectrum<Real>& spec, Real c) {
  if (!spec.entries.empty() && spec.entries.front().eigenvalue + c < Real(0))
    throw std::invalid_argument("shift_spectrum: shift makes spectrum negative");
  Spectrum<Real> out = spec;
  for (auto& e : out.entries) e.eigenvalue += c;
  if (!std::isinf(out.cutoff)) out.cutoff += c;
  if (c > Real(0)) out.zero_modes = 0;
  if (c < Real(0) && !out.entries.empty() && out.entries.front().eigenvalue == Real(0))
    out.zero_modes = out.entries.front().multiplicity;
  return out;
}

/// Spectrum of c*D (metric rescaling g -> g/c).
template <class Real>
Spectrum<Real> scale_spectrum(const Spectrum<Real>& spec, Real c) {
  if (!(c > Real(0))) throw std::invalid_argument("scale_spectrum: requires c > 0");
  Spectrum<Real> out = spec;
  for (auto& e : out.entries) e.eigenvalue *= c;
  if (!std::isinf(out.cutoff)) out.cutoff *= c;
  return out;
}

/// Weyl normalization W with N(lambda) ~ W lambda^{n/2}, estimated from the
/// top of the listed spectrum. Used only for truncation tail estimates.
template <class Real>
Real weyl_normalization(const Spectrum<Real>& spec) {
  if (spec.entries.empty() || spec.dim == 0) return Real(0);
  const Real lc = spec.entries.back().eigenvalue;
  if (!(lc > Real(0))) return Real(0);
  return Real(spec.total_multiplicity()) / std::pow(lc, Real(spec.dim) / Real(2));
}

/// Upper estimate of sum_{lambda > cutoff} m e^{-lambda t}, from the Weyl
/// counting density with a factor-2 safety margin. Zero for complete
/// spectra. Checked against refined cutoffs in the test suite.
template <class Real>
Real heat_tail_bound(const Spectrum<Real>& spec, Real t) {
  if (!(t > Real(0))) throw std::invalid_argument("heat_tail_bound: requires t > 0");
  if (spec.complete() || spec.entries.empty()) return Real(0);
  const Real w = weyl_normalization(spec);
  const Real half_n = Real(spec.dim) / Real(2);
  const Real lc = spec.cutoff;
  if (t * lc > Real(740)) return Real(0);
  // Weyl density dN = W (n/2) lambda^{n/2-1} dlambda integrated against
  // e^{-lambda t} over (cutoff, inf) gives W (n/2) t^{-n/2} Gamma(n/2, t*cutoff).
  const Real tail = w * half_n * std::pow(t, -half_n) * upper_incomplete_gamma(half_n, t * lc);
  return Real(2) * tail;
}

/// Smallest t at which the heat tail bound drops below `tol`; this is the
/// lower edge of usable heat-trace arguments for a given cutoff.
template <class Real>
Real min_usable_time(const Spectrum<Real>& spec, Real tol) {
  if (spec.complete()) return Real(0);
  Real lo = Real(1e-300), hi = Real(1);
  if (heat_tail_bound(spec, hi) > tol) {
    while (heat_tail_bound(spec, hi) > tol && hi < Real(1e6)) hi *= Real(2);
    return hi;
  }
  for (int i = 0; i < 400; ++i) {
    const Real mid = std::sqrt(lo * hi);
    if (heat_tail_bound(spec, mid) > tol)
      lo = mid;
    else
      hi = mid;
    if (hi / lo < Real(1) + Real(1e-12)) break;
  }
  return hi;
}

}  // namespace spectralflow

#endif
