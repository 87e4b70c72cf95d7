// Spectral zeta function via the Mellin split at t = 1:
//   Gamma(s) zeta(s) = sum_k ahat_k / (s - (n-k)/2)  -  h/s
//                      + int_0^1 t^{s-1} [K(t) - sum_k ahat_k t^{(k-n)/2}] dt
//                      + sum_k m_k lambda_k^{-s} Gamma(s, lambda_k),
// where K(t) is the full heat trace and h the number of zero modes
// (the zeta sum runs over the positive spectrum only). Everything at
// s = 0 follows from 1/Gamma(s) = s + gamma_E s^2 + ...:
//   zeta(0) = ahat_n - h,
//   zeta'(0) = gamma_E (ahat_n - h) - sum_{k != n} 2 ahat_k/(n-k) + E(0) + I2(0).
#ifndef SPECTRALFLOW_ZETA_ZETA_HPP
#define SPECTRALFLOW_ZETA_ZETA_HPP

#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "spectralflow/core/errors.hpp"
#include "spectralflow/core/quadrature.hpp"
#include "spectralflow/core/special.hpp"
#include "spectralflow/heat/coefficients.hpp"
#include "spectralflow/heat/heat_trace.hpp"

namespace spectralflow {

template <class Real>
struct ValueWithError {
  Real value = Real(0);
  Real error = Real(0);
};

template <class Real>
struct ZetaData {
  int dim = 0;
  Real zeta0 = Real(0);
  Real zeta0_prime = Real(0);
  std::map<Real, Real> residues;  // pole location s -> residue, for k < n
  std::int64_t zero_modes_subtracted = 0;
  int expansion_order = 0;
  Real error_estimate = Real(0);
};

template <class Real>
struct ZetaOptions {
  Real t_split_low = Real(1e-3);  // lower edge of the numerically integrated (0,1) piece
  Real quad_abs_tol = Real(1e-13);
  Real quad_rel_tol = Real(1e-11);
};

/// Direct sum zeta(s) = sum m lambda^{-s} over the positive spectrum, plus
/// the Weyl integral tail estimate. Only valid in the convergent region
/// s > n/2.
template <class Real>
ValueWithError<Real> zeta_value(const Spectrum<Real>& spec, Real s) {
  const Real half_n = Real(spec.dim) / Real(2);
  if (!(s > half_n)) {
    std::ostringstream msg;
    msg << "zeta_value: s = " << double(s) << " is outside the convergent region s > n/2 = "
        << double(half_n) << "; use zeta_analytic for the continuation";
    throw std::domain_error(msg.str());
  }
  CompensatedSum<Real> sum;
  for (auto it = spec.entries.rbegin(); it != spec.entries.rend(); ++it)
    if (it->eigenvalue > Real(0))
      sum.add(Real(it->multiplicity) * std::pow(it->eigenvalue, -s));

  ValueWithError<Real> out{sum.value(), Real(0)};
  if (!spec.complete()) {
    const Real w = weyl_normalization(spec);
    const Real tail = w * half_n * std::pow(spec.cutoff, half_n - s) / (s - half_n);
    out.value += tail;
    out.error = tail / Real(2) + Real(8) * std::numeric_limits<Real>::epsilon() *
                                     std::abs(out.value);
  }
  return out;
}

namespace detail {

// I2(s) = int_1^inf t^{s-1} K_+(t) dt evaluated term by term through the
// upper incomplete gamma of each eigenvalue, plus a tail bound for the
// truncated part of the spectrum.
template <class Real>
ValueWithError<Real> mellin_upper_part(const Spectrum<Real>& spec, Real s) {
  CompensatedSum<Real> sum;
  for (auto it = spec.entries.rbegin(); it != spec.entries.rend(); ++it) {
    if (it->eigenvalue <= Real(0)) continue;
    if (it->eigenvalue > Real(740)) continue;
    sum.add(Real(it->multiplicity) * std::pow(it->eigenvalue, -s) *
            upper_incomplete_gamma(s, it->eigenvalue));
  }
  Real tail = Real(0);
  if (!spec.complete() && spec.cutoff < Real(700)) {
    const Real half_n = Real(spec.dim) / Real(2);
    tail = Real(2) * weyl_normalization(spec) * half_n *
           std::pow(spec.cutoff, half_n - Real(1)) * std::exp(-spec.cutoff);
  }
  return {sum.value(), tail};
}

// E(s) = int_{t_lo}^1 t^{s-1} R(t) dt with R the expansion remainder,
// plus an estimate of the dropped (0, t_lo) piece assuming R keeps its
// leading-order decay R ~ C t^{(K+2-n)/2} below t_lo.
template <class Real>
ValueWithError<Real> mellin_lower_remainder(const Spectrum<Real>& spec,
                                            const HeatCoefficients<Real>& coeffs, int order,
                                            Real s, const ZetaOptions<Real>& opt) {
  const auto remainder = [&](Real t) {
    Real model = Real(0);
    for (int k = 0; k <= order; ++k)
      if (coeffs.at(k) != Real(0))
        model += coeffs.at(k) * std::pow(t, Real(k - spec.dim) / Real(2));
    return heat_trace(spec, t, ZeroModes::include, Real(1e-9)).value - model;
  };
  QuadResult<Real> quad;
  try {
    quad = integrate_adaptive<Real>(
        [&](Real t) { return std::pow(t, s - Real(1)) * remainder(t); }, opt.t_split_low, Real(1),
        opt.quad_abs_tol, opt.quad_rel_tol);
  } catch (const AccuracyError& e) {
    throw AccuracyError(std::string("zeta continuation: spectrum cutoff too low for the "
                                    "remainder integral; raise the cutoff (") +
                        e.what() + ")");
  }

  const Real decay_power = Real(order + 2 - spec.dim) / Real(2) + s;
  Real dropped = std::numeric_limits<Real>::infinity();
  if (decay_power > Real(0))
    dropped = std::abs(remainder(opt.t_split_low)) * std::pow(opt.t_split_low, s) / decay_power;
  // The integrand is a near-cancellation of the trace against its
  // expansion; the surviving roundoff integrates to roughly
  // eps * int t^{s-1} K(t) dt, dominated by the t_lo end.
  const Real half_n = Real(spec.dim) / Real(2);
  const Real roundoff = Real(8) * std::numeric_limits<Real>::epsilon() * std::abs(coeffs.at(0)) *
                        std::pow(opt.t_split_low, s - half_n) / half_n;
  return {quad.value, quad.error + dropped + roundoff};
}

}  // namespace detail

/// Analytic continuation of the spectral zeta function from the Mellin
/// split, using expansion coefficients through `order` >= n + 2 (fitted or
/// closed-form for the same spectrum).
template <class Real>
ZetaData<Real> zeta_analytic(const Spectrum<Real>& spec, const HeatCoefficients<Real>& coeffs,
                             int order, const ZetaOptions<Real>& opt = {}) {
  const int n = spec.dim;
  if (coeffs.dim != n) throw std::invalid_argument("zeta_analytic: coefficient dim mismatch");
  if (order < n + 2) throw std::invalid_argument("zeta_analytic: order must be >= dim + 2");
  if (order > coeffs.order())
    throw std::invalid_argument("zeta_analytic: coefficients do not reach the requested order");
  const Real h = Real(spec.zero_modes);

  const auto lower = detail::mellin_lower_remainder(spec, coeffs, order, Real(0), opt);
  if (!std::isfinite(lower.error))
    throw AccuracyError("zeta_analytic: remainder integral not controlled; increase order");
  const auto upper = detail::mellin_upper_part(spec, Real(0));

  Real a0_regular = Real(0);
  for (int k = 0; k <= order; ++k) {
    if (k == n) continue;
    a0_regular -= Real(2) * coeffs.at(k) / Real(n - k);
  }
  a0_regular += lower.value + upper.value;

  ZetaData<Real> out;
  out.dim = n;
  out.zero_modes_subtracted = spec.zero_modes;
  out.expansion_order = order;
  out.zeta0 = coeffs.at(n) - h;
  out.zeta0_prime = std::numbers::egamma_v<Real> * out.zeta0 + a0_regular;
  for (int k = 0; k < n; ++k) {
    const Real s0 = Real(n - k) / Real(2);
    out.residues[s0] = coeffs.at(k) / std::tgamma(s0);
  }
  out.error_estimate = lower.error + upper.error;
  return out;
}

/// Evaluate the same Mellin split at a regular point s (away from the
/// poles (n-k)/2 and from 0). Used to check the continuation against
/// direct summation in the convergent region.
template <class Real>
ValueWithError<Real> zeta_split_eval(const Spectrum<Real>& spec,
                                     const HeatCoefficients<Real>& coeffs, int order, Real s,
                                     const ZetaOptions<Real>& opt = {}) {
  const int n = spec.dim;
  if (std::abs(s) < Real(1e-8))
    throw std::domain_error("zeta_split_eval: use zeta_analytic at s = 0");
  for (int k = 0; k <= order; ++k)
    if (std::abs(s - Real(n - k) / Real(2)) < Real(1e-8))
      throw std::domain_error("zeta_split_eval: s coincides with an expansion pole");

  const auto lower = detail::mellin_lower_remainder(spec, coeffs, order, s, opt);
  const auto upper = detail::mellin_upper_part(spec, s);
  Real a = -Real(spec.zero_modes) / s + lower.value + upper.value;
  for (int k = 0; k <= order; ++k) a += coeffs.at(k) / (s - Real(n - k) / Real(2));
  const Real gamma_s = std::tgamma(s);
  return {a / gamma_s, (lower.error + upper.error) / std::abs(gamma_s)};
}

/// Renormalized log-determinant at scale Lambda:
/// ln det(D, Lambda) = -zeta'(0) - ln(Lambda^2) zeta(0).
template <class Real>
Real log_det(const ZetaData<Real>& zd, Real scale) {
  if (!(scale > Real(0))) throw std::invalid_argument("log_det: scale must be > 0");
  return -zd.zeta0_prime - Real(2) * std::log(scale) * zd.zeta0;
}

/// Renormalized one-loop effective action at scale mu:
/// W_ren = -1/2 zeta'(0) - 1/2 ln(mu^2) zeta(0).
template <class Real>
Real effective_action(const ZetaData<Real>& zd, Real mu) {
  if (!(mu > Real(0))) throw std::invalid_argument("effective_action: mu must be > 0");
  return -zd.zeta0_prime / Real(2) - std::log(mu) * zd.zeta0;
}

}  // namespace spectralflow

#endif
