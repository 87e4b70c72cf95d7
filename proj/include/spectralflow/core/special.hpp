// Upper incomplete gamma and the exponential integral E1, the only
// special functions needed beyond <cmath>. Series for small arguments,
// modified-Lentz continued fractions otherwise.
#ifndef SPECTRALFLOW_CORE_SPECIAL_HPP
#define SPECTRALFLOW_CORE_SPECIAL_HPP

#include <cmath>
#include <limits>
#include <stdexcept>

namespace spectralflow {

namespace detail {

// Continued fraction for Gamma(s, x), valid for x > 0, best for x >= s + 1.
template <class Real>
Real upper_gamma_cf(Real s, Real x) {
  const Real eps = std::numeric_limits<Real>::epsilon();
  const Real tiny = std::numeric_limits<Real>::min() / eps;
  Real b = x + Real(1) - s;
  Real c = Real(1) / tiny;
  Real d = Real(1) / b;
  Real f = d;
  for (int i = 1; i < 512; ++i) {
    const Real an = -Real(i) * (Real(i) - s);
    b += Real(2);
    d = an * d + b;
    if (std::abs(d) < tiny) d = tiny;
    c = b + an / c;
    if (std::abs(c) < tiny) c = tiny;
    d = Real(1) / d;
    const Real delta = d * c;
    f *= delta;
    if (std::abs(delta - Real(1)) < eps) break;
  }
  return std::exp(-x + s * std::log(x)) * f;
}

// Series for the lower incomplete gamma, x < s + 1, s > 0.
template <class Real>
Real lower_gamma_series(Real s, Real x) {
  const Real eps = std::numeric_limits<Real>::epsilon();
  Real term = Real(1) / s;
  Real sum = term;
  Real a = s;
  for (int i = 0; i < 512; ++i) {
    a += Real(1);
    term *= x / a;
    sum += term;
    if (std::abs(term) < std::abs(sum) * eps) break;
  }
  return sum * std::exp(-x + s * std::log(x));
}

}  // namespace detail

/// Exponential integral E1(x) = int_1^inf exp(-x t)/t dt, x > 0.
template <class Real>
Real expint_e1(Real x) {
  if (!(x > Real(0))) throw std::domain_error("expint_e1: requires x > 0");
  if (x > Real(700)) return Real(0);  // below double underflow once scaled by e^{-x}
  if (x <= Real(1)) {
    // E1(x) = -gamma_E - ln x + sum_{k>=1} (-1)^{k+1} x^k / (k k!)
    const Real euler_gamma = Real(0.57721566490153286061L);
    Real sum = -euler_gamma - std::log(x);
    Real term = Real(1);
    for (int k = 1; k < 64; ++k) {
      term *= -x / Real(k);
      const Real add = -term / Real(k);
      sum += add;
      if (std::abs(add) < std::abs(sum) * std::numeric_limits<Real>::epsilon()) break;
    }
    return sum;
  }
  return detail::upper_gamma_cf(Real(0), x);
}

/// Upper incomplete gamma Gamma(s, x) for x >= 0. Supports s > 0, and
/// s = 0 where it reduces to E1.
template <class Real>
Real upper_incomplete_gamma(Real s, Real x) {
  if (x < Real(0)) throw std::domain_error("upper_incomplete_gamma: requires x >= 0");
  if (x == Real(0)) {
    if (s <= Real(0)) throw std::domain_error("upper_incomplete_gamma: diverges at x = 0 for s <= 0");
    return std::tgamma(s);
  }
  if (s == Real(0)) return expint_e1(x);
  if (s < Real(0)) {
    // One-step recurrence Gamma(s,x) = (Gamma(s+1,x) - x^s e^{-x})/s keeps
    // us out of the CF's slow region; only ever needed for s > -1 here.
    if (s <= Real(-1)) throw std::domain_error("upper_incomplete_gamma: s <= -1 unsupported");
    return (upper_incomplete_gamma(s + Real(1), x) - std::pow(x, s) * std::exp(-x)) / s;
  }
  if (-x + s * std::log(x) < Real(-745)) return Real(0);
  if (x < s + Real(1)) return std::tgamma(s) - detail::lower_gamma_series(s, x);
  return detail::upper_gamma_cf(s, x);
}

}  // namespace spectralflow

#endif
