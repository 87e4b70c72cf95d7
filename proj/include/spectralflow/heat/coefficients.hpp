// Heat-kernel coefficients in the normalization that absorbs (4 pi)^{-n/2}:
// Tr e^{-tD} ~ sum_k ahat_k t^{(k-n)/2}. Closed forms for Laplace-type
// operators D = Lap - E with spatially constant endomorphism E, and the
// integrated trace-anomaly evaluators built from them.
#ifndef SPECTRALFLOW_HEAT_COEFFICIENTS_HPP
#define SPECTRALFLOW_HEAT_COEFFICIENTS_HPP

#include <cmath>
#include <numbers>
#include <optional>
#include <vector>

#include "spectralflow/core/errors.hpp"
#include "spectralflow/manifolds/curvature.hpp"

namespace spectralflow {

template <class Real>
struct FitDiagnostics {
  Real weighted_rms = Real(0);    // rms of the weighted least-squares residual
  Real max_abs_residual = Real(0);  // sup_i |K(t_i) - model(t_i)| in trace units
  Real condition = Real(0);       // condition estimate of the equilibrated design matrix
  std::vector<Real> t_grid;
};

template <class Real>
struct HeatCoefficients {
  int dim = 0;
  std::vector<Real> coeffs;  // coeffs[k] = ahat_k, k = 0..order
  bool absorbs_4pi_power = true;  // (4 pi)^{-n/2} folded into every coefficient
  std::optional<FitDiagnostics<Real>> fit;  // absent for closed-form evaluations

  int order() const { return static_cast<int>(coeffs.size()) - 1; }
  Real at(int k) const { return k >= 0 && k < int(coeffs.size()) ? coeffs[k] : Real(0); }
  /// Top coefficient ahat_n (zero in odd dimensions for closed manifolds).
  Real top() const { return at(dim); }

  /// Evaluate the truncated expansion sum_k ahat_k t^{(k-n)/2}.
  Real expansion(Real t) const {
    Real sum = Real(0);
    for (int k = 0; k < int(coeffs.size()); ++k)
      if (coeffs[k] != Real(0)) sum += coeffs[k] * std::pow(t, Real(k - dim) / Real(2));
    return sum;
  }
};

/// Closed-form coefficients of D = Lap - E for constant scalar smearing f
/// and constant endomorphism E (a mass term m^2 enters as E = -m^2):
///   a0 = f vol,  a2 = (f/6)(int_R + 6 E vol),
///   a4 = (f/360)(60 E int_R + 180 E^2 vol + 12 int_LapR + 5 int_R2
///                - 2 int_Ric2 + 2 int_Riem2),
/// all times (4 pi)^{-n/2}. Orders above 4 are available only on flat
/// manifolds, where the series exponentiates exactly: ahat_{2j} =
/// (4 pi)^{-n/2} f vol E^j / j!.
template <class Real>
HeatCoefficients<Real> seeley_dewitt(const CurvatureData<Real>& curv, Real f_const, Real e_const,
                                     int order = 4) {
  if (curv.dim < 1) throw UnsupportedManifoldError("seeley_dewitt: invalid dimension");
  if (order < 0) throw std::invalid_argument("seeley_dewitt: order must be >= 0");
  const bool flat = curv.int_R == Real(0) && curv.int_R2 == Real(0) &&
                    curv.int_Ric2 == Real(0) && curv.int_Riem2 == Real(0);
  if (order > 4 && !flat)
    throw AccuracyError("seeley_dewitt: closed forms beyond order 4 exist only for flat metrics");

  const Real pi = std::numbers::pi_v<Real>;
  const Real norm = std::pow(Real(4) * pi, -Real(curv.dim) / Real(2));

  HeatCoefficients<Real> out;
  out.dim = curv.dim;
  out.coeffs.assign(static_cast<std::size_t>(order) + 1, Real(0));
  if (flat) {
    // e^{tE} (4 pi t)^{-n/2} vol, term by term.
    Real factorial = Real(1);
    for (int j = 0; 2 * j <= order; ++j) {
      if (j > 0) factorial *= Real(j);
      out.coeffs[2 * j] = norm * f_const * curv.vol * std::pow(e_const, Real(j)) / factorial;
    }
    return out;
  }
  out.coeffs[0] = norm * f_const * curv.vol;
  if (order >= 2)
    out.coeffs[2] = norm * (f_const / Real(6)) * (curv.int_R + Real(6) * e_const * curv.vol);
  if (order >= 4)
    out.coeffs[4] = norm * (f_const / Real(360)) *
                    (Real(60) * e_const * curv.int_R + Real(180) * e_const * e_const * curv.vol +
                     Real(12) * curv.int_LapR + Real(5) * curv.int_R2 - Real(2) * curv.int_Ric2 +
                     Real(2) * curv.int_Riem2);
  return out;
}

/// Integrated 2d trace anomaly: (1/24 pi) int_R.
template <class Real>
Real anomaly_2d(const CurvatureData<Real>& curv) {
  if (curv.dim != 2) throw UnsupportedManifoldError("anomaly_2d: requires a 2d manifold");
  return curv.int_R / (Real(24) * std::numbers::pi_v<Real>);
}

/// Integrated 4d trace anomaly: -(1/16 pi^2)(a int_E4 - c int_W2).
template <class Real>
Real anomaly_4d(const CurvatureData<Real>& curv, Real a_charge, Real c_charge) {
  if (curv.dim != 4) throw UnsupportedManifoldError("anomaly_4d: requires a 4d manifold");
  const Real pi = std::numbers::pi_v<Real>;
  return -(a_charge * curv.int_E4 - c_charge * curv.int_W2) / (Real(16) * pi * pi);
}

}  // namespace spectralflow

#endif
