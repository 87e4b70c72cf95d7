// Ricci flow on the two tractable metric families: round spheres (exact
// shrinking solution, cross-checked against an RK4 integration) and
// conformally flat 2-tori (explicit Euler with a stability guard).
#ifndef SPECTRALFLOW_FLOW_RICCI_HPP
#define SPECTRALFLOW_FLOW_RICCI_HPP

#include <cmath>
#include <sstream>
#include <variant>

#include "spectralflow/core/errors.hpp"
#include "spectralflow/manifolds/conformal_torus.hpp"

namespace spectralflow {

/// Extinction time of the round-sphere Ricci flow: r0^2 / (2(n-1)).
template <class Real>
Real sphere_extinction_time(int n, Real r0) {
  if (n < 2) throw std::invalid_argument("sphere_extinction_time: requires n >= 2");
  if (!(r0 > Real(0))) throw std::invalid_argument("sphere_extinction_time: radius must be > 0");
  return r0 * r0 / (Real(2) * Real(n - 1));
}

/// RK4 integration of the sphere flow in the radius variable,
/// dr/dt = -(n-1)/r. Exists as an independent route to ricci_flow_sphere's
/// closed form.
template <class Real>
Real ricci_flow_sphere_ode(int n, Real r0, Real t, int steps = 4000) {
  if (!(t >= Real(0)) || t >= sphere_extinction_time(n, r0))
    throw std::invalid_argument("ricci_flow_sphere_ode: t outside [0, T_ext)");
  const auto rhs = [n](Real r) { return -Real(n - 1) / r; };
  const Real dt = t / Real(steps);
  Real r = r0;
  for (int i = 0; i < steps; ++i) {
    const Real k1 = rhs(r);
    const Real k2 = rhs(r + dt / Real(2) * k1);
    const Real k3 = rhs(r + dt / Real(2) * k2);
    const Real k4 = rhs(r + dt * k3);
    r += dt / Real(6) * (k1 + Real(2) * k2 + Real(2) * k3 + k4);
  }
  return r;
}

/// Radius of S^n under Ricci flow at time t: r(t) = sqrt(r0^2 - 2(n-1) t),
/// from Ric = (n-1)/r^2 g. The closed form is cross-checked against the
/// RK4 integration of dr/dt = -(n-1)/r to 1e-6 before returning.
template <class Real>
Real ricci_flow_sphere(int n, Real r0, Real t) {
  const Real t_ext = sphere_extinction_time(n, r0);
  if (t < Real(0)) throw std::invalid_argument("ricci_flow_sphere: requires t >= 0");
  if (t >= t_ext) {
    std::ostringstream msg;
    msg << "ricci_flow_sphere: flow extinct; extinction time T_ext = " << double(t_ext);
    throw ExtinctionError(msg.str(), double(t_ext));
  }
  const Real closed = std::sqrt(r0 * r0 - Real(2) * Real(n - 1) * t);
  if (t == Real(0)) return r0;
  const Real ode = ricci_flow_sphere_ode(n, r0, t);
  if (!(std::abs(ode - closed) <= Real(1e-6) * std::max(Real(1), r0)))
    throw AccuracyError("ricci_flow_sphere: ODE cross-check disagrees with the closed form");
  return closed;
}

/// A point on a Ricci flow trajectory: the metric family parameters plus
/// the flow time reached so far.
template <class Real>
struct FlowState {
  std::variant<RoundSphere<Real>, ConformalTorus<Real>> family;
  Real time = Real(0);

  void validate() const {
    if (!(time >= Real(0))) throw std::invalid_argument("FlowState: time must be >= 0");
    std::visit([](const auto& f) { f.validate(); }, family);
  }
};

template <class Real>
FlowState<Real> advance(const FlowState<Real>& state, Real dt);

/// Largest stable explicit-Euler step for du/dt = -e^{-2u} Lap0 u:
/// dt_max = 2 min(e^{2u}) / sigma(Lap0), i.e. c = 2/(sigma h^2) in the
/// dt <= c h^2 min e^{2u} form. Steps are accepted below 0.95 * dt_max.
template <class Real>
Real conformal_flow_max_step(const FlatTorusLaplacian<Real>& lap,
                             const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>& u) {
  const Real max_diffusivity = (-Real(2) * u.array()).exp().maxCoeff();
  return Real(2) / (lap.symbol_bound() * max_diffusivity);
}

/// Evolve the conformal factor of g = e^{2u} g0 under 2d Ricci flow,
/// du/dt = -e^{-2u} Lap0 u, by `steps` explicit Euler steps of size dt.
/// Total area int e^{2u} dV0 is conserved up to O(dt) per unit flow time
/// (int R dA = 0 on the torus); the oscillation of u decays. An observer,
/// when given, sees the state after every step.
template <class Real, class Observer>
Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> ricci_flow_conformal_torus(
    const ConformalTorus<Real>& initial, Real dt, int steps, Observer&& observer) {
  initial.validate();
  if (!(dt > Real(0))) throw std::invalid_argument("ricci_flow_conformal_torus: dt must be > 0");
  if (steps < 0) throw std::invalid_argument("ricci_flow_conformal_torus: steps must be >= 0");

  const FlatTorusLaplacian<Real> lap(initial.basis, initial.u.rows(), initial.u.cols());
  auto u = initial.u;
  for (int s = 0; s < steps; ++s) {
    const Real dt_max = conformal_flow_max_step(lap, u);
    if (dt > Real(0.95) * dt_max) {
      std::ostringstream msg;
      msg << "ricci_flow_conformal_torus: step " << s << " rejected; dt = " << double(dt)
          << " exceeds 0.95 * dt_max = " << double(Real(0.95) * dt_max);
      throw RejectedStepError(msg.str());
    }
    const auto lap_u = lap.apply(u);
    u.array() -= dt * (-Real(2) * u.array()).exp() * lap_u.array();
    observer(s + 1, dt * Real(s + 1), u);
  }
  return u;
}

template <class Real>
Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> ricci_flow_conformal_torus(
    const ConformalTorus<Real>& initial, Real dt, int steps) {
  return ricci_flow_conformal_torus(
      initial, dt, steps,
      [](int, Real, const Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>&) {});
}

/// One flow step of either family. Spheres move along the closed-form
/// shrinking solution; conformal tori take one guarded Euler step.
template <class Real>
FlowState<Real> advance(const FlowState<Real>& state, Real dt) {
  state.validate();
  if (!(dt > Real(0))) throw std::invalid_argument("advance: dt must be > 0");
  FlowState<Real> next = state;
  next.time = state.time + dt;
  if (const auto* sphere = std::get_if<RoundSphere<Real>>(&state.family)) {
    RoundSphere<Real> moved = *sphere;
    moved.radius = ricci_flow_sphere(sphere->n, sphere->radius, dt);
    next.family = moved;
  } else {
    const auto& ct = std::get<ConformalTorus<Real>>(state.family);
    ConformalTorus<Real> moved = ct;
    moved.u = ricci_flow_conformal_torus(ct, dt, 1);
    next.family = moved;
  }
  return next;
}

}  // namespace spectralflow

#endif
