// Heat trace K(t) = sum m_k e^{-lambda_k t} with a guaranteed truncation
// tail bound from the Weyl counting estimate.
#ifndef SPECTRALFLOW_HEAT_HEAT_TRACE_HPP
#define SPECTRALFLOW_HEAT_HEAT_TRACE_HPP

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "spectralflow/core/errors.hpp"
#include "spectralflow/core/spectrum.hpp"
#include "spectralflow/core/summation.hpp"

namespace spectralflow {

enum class ZeroModes { include, exclude };

template <class Real>
struct HeatTraceResult {
  Real value = Real(0);
  Real tail_bound = Real(0);
};

/// Evaluate the heat trace at time t > 0. Throws AccuracyError when the
/// tail bound exceeds `tail_tol`, naming the smallest usable t for this
/// cutoff. Summation order is fixed (smallest terms first), so the result
/// is deterministic.
template <class Real>
HeatTraceResult<Real> heat_trace(const Spectrum<Real>& spec, Real t, ZeroModes zero_modes,
                                 Real tail_tol = Real(1e-6)) {
  if (!(t > Real(0))) throw std::invalid_argument("heat_trace: requires t > 0");
  if (spec.entries.empty()) throw std::invalid_argument("heat_trace: empty spectrum");

  const Real tail = heat_tail_bound(spec, t);
  if (tail > tail_tol) {
    std::ostringstream msg;
    msg << "heat_trace: tail bound " << double(tail) << " exceeds tolerance " << double(tail_tol)
        << " at t = " << double(t) << "; minimum usable t for this cutoff is "
        << double(min_usable_time(spec, tail_tol));
    throw AccuracyError(msg.str());
  }

  // exp underflows below ~e^{-745}; entries are sorted, so locate the cut
  // once and sum from the smallest terms up.
  const Real arg_cut = Real(745);
  const auto end = std::partition_point(
      spec.entries.begin(), spec.entries.end(),
      [&](const SpectrumEntry<Real>& e) { return e.eigenvalue * t <= arg_cut; });
  CompensatedSum<Real> sum;
  for (auto it = std::make_reverse_iterator(end); it != spec.entries.rend(); ++it) {
    if (it->eigenvalue == Real(0)) {
      if (zero_modes == ZeroModes::include) sum.add(Real(it->multiplicity));
    } else {
      sum.add(Real(it->multiplicity) * std::exp(-it->eigenvalue * t));
    }
  }
  return {sum.value(), tail};
}

}  // namespace spectralflow

#endif
