// Holographic radial trajectories driven by boundary zeta data: the bulk
// free-energy variation dF/drho = (1/2) zeta'(0) - rho zeta(0) and the
// conjectured eigenvalue trajectory obtained by integrating
// d lambda/d rho = -(1/2) zeta'(0) + rho zeta(0) in closed form, which is
// exactly quadratic in rho. Also the log-determinant scale identity that
// closes the a_n = zeta(0) loop against the flow module.
#ifndef SPECTRALFLOW_THERMO_HOLOGRAPHIC_HPP
#define SPECTRALFLOW_THERMO_HOLOGRAPHIC_HPP

#include <cmath>
#include <vector>

#include "spectralflow/zeta/zeta.hpp"

namespace spectralflow {

template <class Real>
struct HoloTrajectory {
  std::vector<Real> rho;
  std::vector<Real> lambda;    // lambda0 - (1/2) zeta'(0) rho + (1/2) zeta(0) rho^2
  std::vector<Real> df_drho;   // (1/2) zeta'(0) - rho zeta(0)
  Real zeta0 = Real(0);
  Real zeta0_prime = Real(0);
  Real lambda0 = Real(0);
  bool odd_boundary_warning = false;  // formula is stated for even-dimensional boundaries
};

template <class Real>
HoloTrajectory<Real> holographic_flow(const ZetaData<Real>& boundary, Real lambda0,
                                      const std::vector<Real>& rho_grid) {
  HoloTrajectory<Real> out;
  out.zeta0 = boundary.zeta0;
  out.zeta0_prime = boundary.zeta0_prime;
  out.lambda0 = lambda0;
  out.odd_boundary_warning = boundary.dim % 2 != 0;
  out.rho.reserve(rho_grid.size());
  for (const Real rho : rho_grid) {
    if (rho < Real(0)) throw std::invalid_argument("holographic_flow: rho must be >= 0");
    out.rho.push_back(rho);
    out.lambda.push_back(lambda0 - boundary.zeta0_prime / Real(2) * rho +
                         boundary.zeta0 / Real(2) * rho * rho);
    out.df_drho.push_back(boundary.zeta0_prime / Real(2) - rho * boundary.zeta0);
  }
  return out;
}

template <class Real>
struct LogDetFlowReport {
  Real scale = Real(0);
  Real scale_prime = Real(0);
  Real delta_log_det = Real(0);   // ln det(D, Lambda) - ln det(D, Lambda')
  Real expected = Real(0);        // -2 ln(Lambda/Lambda') zeta(0)
  Real flow_log_part = Real(0);   // 2 ln(Lambda/Lambda') ahat_n, the RG-step k = n term
  Real zeta0 = Real(0);
  Real a_n = Real(0);
  std::int64_t zero_modes = 0;    // delta_log_det == -flow_log_part exactly when this is 0
};

/// Cross-check of d(ln det)/dt = a_n = zeta(0): the scale variation of the
/// renormalized log-determinant between Lambda and Lambda' against both
/// the zeta route (-2 ln(Lambda/Lambda') zeta(0), exact by construction)
/// and the flow module's logarithmic part (2 ln ratio * ahat_n), which
/// agree when the operator is kernel-free.
template <class Real>
LogDetFlowReport<Real> rg_entropy_consistency(const Spectrum<Real>& spec,
                                              const HeatCoefficients<Real>& coeffs, Real scale,
                                              Real scale_prime,
                                              const ZetaOptions<Real>& opt = {}) {
  if (!(scale > Real(0)) || !(scale_prime > Real(0)))
    throw std::domain_error("rg_entropy_consistency: scales must be > 0");
  const auto zd = zeta_analytic(spec, coeffs, std::min(coeffs.order(), spec.dim + 2), opt);

  LogDetFlowReport<Real> out;
  out.scale = scale;
  out.scale_prime = scale_prime;
  out.delta_log_det = log_det(zd, scale) - log_det(zd, scale_prime);
  out.expected = -Real(2) * std::log(scale / scale_prime) * zd.zeta0;
  out.flow_log_part = Real(2) * std::log(scale / scale_prime) * coeffs.at(spec.dim);
  out.zeta0 = zd.zeta0;
  out.a_n = coeffs.at(spec.dim);
  out.zero_modes = spec.zero_modes;
  return out;
}

}  // namespace spectralflow

#endif
