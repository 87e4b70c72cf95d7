// The RG eigenvalue step: the scale integral of the heat trace between
// cutoffs Lambda -> Lambda' split into its divergent (k < n), logarithmic
// (k = n) and convergent (k > n) parts, with the minimal-subtraction
// bookkeeping that keeps only the logarithmic term. The renormalized
// eigenvalue slope is d lambda / d tau = -ahat_n, i.e. d lambda / dt =
// +ahat_n after the final t = -tau flip. The a2 beta-function evaluator
// lives here too.
#ifndef SPECTRALFLOW_FLOW_RG_STEP_HPP
#define SPECTRALFLOW_FLOW_RG_STEP_HPP

#include <cmath>
#include <sstream>

#include "spectralflow/core/errors.hpp"
#include "spectralflow/core/quadrature.hpp"
#include "spectralflow/heat/coefficients.hpp"
#include "spectralflow/heat/heat_trace.hpp"

namespace spectralflow {

template <class Real>
struct RGStepReport {
  Real scale = Real(0);        // Lambda
  Real scale_prime = Real(0);  // Lambda'
  Real tau = Real(0);          // ln(Lambda'^{-2} / Lambda^{-2}) = 2 ln(Lambda/Lambda')

  Real raw_integral = Real(0);     // int dt/t K(t) over [Lambda^{-2}, Lambda'^{-2}]
  Real divergent_part = Real(0);   // k < n
  Real log_part = Real(0);         // k = n: tau * ahat_n
  Real convergent_part = Real(0);  // n < k <= K

  Real a_n_used = Real(0);
  Real renormalized_shift = Real(0);  // minimal subtraction: -log_part
  Real slope_t_raw = Real(0);         // (raw - div - conv)/tau, the raw-integral route to ahat_n

  Real closure_residual = Real(0);  // raw - (div + log + conv)
  Real truncation_bound = Real(0);  // bound on the k > K remainder over the window
  Real quadrature_error = Real(0);
};

template <class Real>
struct BetaA2Report {
  Real first_term = Real(0);   // (g/6) int_R
  Real flow_driver = Real(0);  // the Lap g term under the substitution Lap g -> -2 Ric
  Real total = Real(0);
};

/// a2-level beta function data for a 2d target from integrated curvature.
/// The Lap g term is evaluated under the declared harmonic-coordinate
/// substitution Lap g -> -2 Ric, whose trace integrates to -int_R in 2d;
/// it is the Ricci-flow driver and is negative on shrinking spheres.
template <class Real>
BetaA2Report<Real> beta_a2(const CurvatureData<Real>& curv, Real g_const) {
  if (curv.dim != 2) throw UnsupportedManifoldError("beta_a2: requires a 2d target");
  BetaA2Report<Real> out;
  out.first_term = g_const / Real(6) * curv.int_R;
  out.flow_driver = -g_const * curv.int_R;
  out.total = out.first_term + out.flow_driver;
  return out;
}

/// One RG step between cutoffs Lambda > Lambda' > 1 (so that the window
/// 0 < Lambda^{-2} < Lambda'^{-2} < 1 holds). `coeffs` must reach order
/// >= n + 2 for the same spectrum; the raw integral uses the full summed
/// trace via adaptive quadrature.
template <class Real>
RGStepReport<Real> rg_eigenvalue_step(const Spectrum<Real>& spec,
                                      const HeatCoefficients<Real>& coeffs, Real scale,
                                      Real scale_prime) {
  const int n = spec.dim;
  if (coeffs.dim != n) throw std::invalid_argument("rg_eigenvalue_step: coefficient dim mismatch");
  if (coeffs.order() < n + 2)
    throw AccuracyError("rg_eigenvalue_step: coefficients must reach order dim + 2");
  if (!(scale >= scale_prime) || !(scale_prime > Real(0)))
    throw std::domain_error("rg_eigenvalue_step: requires Lambda >= Lambda' > 0");
  const Real t_a = Real(1) / (scale * scale);
  const Real t_b = Real(1) / (scale_prime * scale_prime);
  if (!(t_a > Real(0)) || !(t_b < Real(1)))
    throw std::domain_error(
        "rg_eigenvalue_step: validity window 0 < Lambda^{-2} < Lambda'^{-2} < 1 violated");

  RGStepReport<Real> out;
  out.scale = scale;
  out.scale_prime = scale_prime;
  out.tau = Real(2) * std::log(scale / scale_prime);
  out.a_n_used = coeffs.at(n);
  out.log_part = out.tau * out.a_n_used;
  out.renormalized_shift = -out.log_part;

  if (scale == scale_prime) return out;

  const auto quad = integrate_adaptive<Real>(
      [&](Real t) { return heat_trace(spec, t, ZeroModes::include, Real(1e-9)).value / t; }, t_a,
      t_b, Real(1e-14), Real(1e-12));
  out.raw_integral = quad.value;
  out.quadrature_error = quad.error;

  for (int k = 0; k <= coeffs.order(); ++k) {
    if (coeffs.at(k) == Real(0) || k == n) continue;
    // int t^{(k-n)/2 - 1} dt = (2/(k-n)) [Lambda'^{n-k} - Lambda^{n-k}]
    const Real part = Real(2) * coeffs.at(k) / Real(k - n) *
                      (std::pow(scale_prime, Real(n - k)) - std::pow(scale, Real(n - k)));
    if (k < n)
      out.divergent_part += part;
    else
      out.convergent_part += part;
  }

  const auto remainder = [&](Real t) {
    return heat_trace(spec, t, ZeroModes::include, Real(1e-9)).value - coeffs.expansion(t);
  };
  out.truncation_bound =
      std::max(std::abs(remainder(t_a)), std::abs(remainder(t_b))) * out.tau;

  out.closure_residual =
      out.raw_integral - (out.divergent_part + out.log_part + out.convergent_part);
  out.slope_t_raw = (out.raw_integral - out.divergent_part - out.convergent_part) / out.tau;
  return out;
}

}  // namespace spectralflow

#endif
