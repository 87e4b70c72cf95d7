#ifndef SPECTRALFLOW_SPECTRALFLOW_HPP
#define SPECTRALFLOW_SPECTRALFLOW_HPP

#include "spectralflow/core/errors.hpp"
#include "spectralflow/core/quadrature.hpp"
#include "spectralflow/core/special.hpp"
#include "spectralflow/core/spectrum.hpp"
#include "spectralflow/core/summation.hpp"
#include "spectralflow/flow/polyakov.hpp"
#include "spectralflow/flow/rg_step.hpp"
#include "spectralflow/flow/ricci.hpp"
#include "spectralflow/heat/coefficients.hpp"
#include "spectralflow/heat/fit.hpp"
#include "spectralflow/heat/heat_trace.hpp"
#include "spectralflow/manifolds/conformal_torus.hpp"
#include "spectralflow/manifolds/curvature.hpp"
#include "spectralflow/manifolds/manifold_spec.hpp"
#include "spectralflow/manifolds/product.hpp"
#include "spectralflow/manifolds/sphere.hpp"
#include "spectralflow/manifolds/torus.hpp"
#include "spectralflow/thermo/holographic.hpp"
#include "spectralflow/thermo/thermo.hpp"
#include "spectralflow/zeta/zeta.hpp"

#endif
