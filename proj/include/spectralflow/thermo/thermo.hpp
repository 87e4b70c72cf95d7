// Canonical-ensemble thermodynamics from spectral partition functions.
// Every column is an analytic spectral sum (no finite differences):
//   ln Z, F = -ln Z / beta, <E> = -d_beta ln Z,
//   S = ln Z + beta <E>, sigma = d^2_beta ln Z = <(E - <E>)^2>.
// The variance is accumulated centrally, so sigma >= 0 holds numerically.
#ifndef SPECTRALFLOW_THERMO_THERMO_HPP
#define SPECTRALFLOW_THERMO_THERMO_HPP

#include <cmath>
#include <sstream>
#include <vector>

#include "spectralflow/core/errors.hpp"
#include "spectralflow/core/spectrum.hpp"
#include "spectralflow/core/summation.hpp"
#include "spectralflow/heat/coefficients.hpp"

namespace spectralflow {

template <class Real>
struct ThermoProfile {
  std::vector<Real> beta;
  std::vector<Real> log_z;
  std::vector<Real> free_energy;
  std::vector<Real> energy_avg;
  std::vector<Real> entropy;
  std::vector<Real> fluctuation;  // sigma = variance of the energy
  std::vector<Real> tail_bound;   // truncation bound on Z at each beta
};

/// Loose convenience identification beta ~ Lambda^{-2} between inverse
/// temperature and the RG cutoff; the profile itself treats beta as free.
template <class Real>
Real beta_from_scale(Real scale) {
  if (!(scale > Real(0))) throw std::invalid_argument("beta_from_scale: scale must be > 0");
  return Real(1) / (scale * scale);
}

/// Thermodynamic profile of a spectrum over a beta grid. All listed levels
/// enter Z (zero modes are microstates too). Throws AccuracyError when the
/// truncation tail exceeds `tail_rel_tol` relative to Z; complete spectra
/// (cutoff = inf) never do.
template <class Real>
ThermoProfile<Real> thermo_profile(const Spectrum<Real>& spec, const std::vector<Real>& beta_grid,
                                   Real tail_rel_tol = Real(1e-9)) {
  if (spec.entries.empty()) throw std::invalid_argument("thermo_profile: empty spectrum");
  ThermoProfile<Real> out;
  const std::size_t m = beta_grid.size();
  out.beta.reserve(m);

  for (const Real beta : beta_grid) {
    if (!(beta > Real(0))) throw std::invalid_argument("thermo_profile: beta must be > 0");
    const Real lambda0 = spec.entries.front().eigenvalue;

    CompensatedSum<Real> z_shifted, e_weighted;
    for (auto it = spec.entries.rbegin(); it != spec.entries.rend(); ++it) {
      const Real arg = beta * (it->eigenvalue - lambda0);
      if (arg > Real(745)) continue;
      const Real w = Real(it->multiplicity) * std::exp(-arg);
      z_shifted.add(w);
      e_weighted.add(w * it->eigenvalue);
    }
    const Real z_sh = z_shifted.value();
    const Real log_z = std::log(z_sh) - beta * lambda0;
    const Real e_avg = e_weighted.value() / z_sh;

    CompensatedSum<Real> var_weighted;
    for (auto it = spec.entries.rbegin(); it != spec.entries.rend(); ++it) {
      const Real arg = beta * (it->eigenvalue - lambda0);
      if (arg > Real(745)) continue;
      const Real d = it->eigenvalue - e_avg;
      var_weighted.add(Real(it->multiplicity) * std::exp(-arg) * d * d);
    }
    const Real sigma = var_weighted.value() / z_sh;

    const Real tail = heat_tail_bound(spec, beta);
    if (tail > tail_rel_tol * std::exp(log_z)) {
      std::ostringstream msg;
      msg << "thermo_profile: truncation tail dominates at beta = " << double(beta)
          << "; smallest usable beta for this cutoff is "
          << double(min_usable_time(spec, tail_rel_tol));
      throw AccuracyError(msg.str());
    }

    out.beta.push_back(beta);
    out.log_z.push_back(log_z);
    out.free_energy.push_back(-log_z / beta);
    out.energy_avg.push_back(e_avg);
    out.entropy.push_back(log_z + beta * e_avg);
    out.fluctuation.push_back(sigma);
    out.tail_bound.push_back(tail);
  }
  return out;
}

/// Entropy-variation rate along the RG flow: proportional to the top heat
/// coefficient, returned with unit proportionality constant.
template <class Real>
Real entropy_variation(const HeatCoefficients<Real>& coeffs) {
  if (coeffs.order() < coeffs.dim)
    throw std::invalid_argument("entropy_variation: coefficients must reach order dim");
  return coeffs.top();
}

}  // namespace spectralflow

#endif
