// Extraction of heat-kernel coefficients by weighted least squares against
// the basis {t^{(k-n)/2}} on a small-t grid. Rows are weighted by t^{n/2}
// so every term enters at comparable magnitude, and columns are
// equilibrated before the solve.
#ifndef SPECTRALFLOW_HEAT_FIT_HPP
#define SPECTRALFLOW_HEAT_FIT_HPP

#include <Eigen/Dense>
#include <cmath>
#include <sstream>
#include <vector>

#include "spectralflow/core/errors.hpp"
#include "spectralflow/heat/coefficients.hpp"
#include "spectralflow/heat/heat_trace.hpp"

namespace spectralflow {

/// Default fit grid: `points` logarithmically spaced times in
/// [t_min, t_max], with t_min the smallest time whose truncation tail
/// bound stays below `tail_target`.
template <class Real>
std::vector<Real> default_fit_grid(const Spectrum<Real>& spec, int points = 24,
                                   Real t_max = Real(0.1), Real tail_target = Real(1e-12)) {
  if (points < 2) throw std::invalid_argument("default_fit_grid: need at least 2 points");
  Real t_min = min_usable_time(spec, tail_target);
  if (spec.complete()) t_min = t_max * Real(1e-6);
  if (!(t_min < t_max))
    throw AccuracyError("default_fit_grid: spectrum cutoff too low for the requested window");
  std::vector<Real> grid(points);
  const Real ratio = std::log(t_max / t_min) / Real(points - 1);
  for (int i = 0; i < points; ++i) grid[i] = t_min * std::exp(ratio * Real(i));
  return grid;
}

/// Fit ahat_0..ahat_K to the full heat trace (zero modes included) on the
/// given t-grid. Throws FitError if the equilibrated design matrix has a
/// condition estimate above 1e12.
template <class Real>
HeatCoefficients<Real> fit_heat_coefficients(const Spectrum<Real>& spec, int order,
                                             const std::vector<Real>& t_grid) {
  using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;

  const int n = spec.dim;
  if (order < 0 || order > n + 4)
    throw std::invalid_argument("fit_heat_coefficients: order must be in [0, dim + 4]");
  const int cols = order + 1;
  const int rows = static_cast<int>(t_grid.size());
  if (rows < cols)
    throw std::invalid_argument("fit_heat_coefficients: grid smaller than basis size");
  for (int i = 0; i < rows; ++i) {
    if (!(t_grid[i] > Real(0)))
      throw std::invalid_argument("fit_heat_coefficients: grid times must be > 0");
    if (i > 0 && !(t_grid[i] > t_grid[i - 1]))
      throw std::invalid_argument("fit_heat_coefficients: grid must be strictly increasing");
  }

  Mat design(rows, cols);
  Vec data(rows), weights(rows);
  for (int i = 0; i < rows; ++i) {
    const Real t = t_grid[i];
    weights(i) = std::pow(t, Real(n) / Real(2));
    data(i) = heat_trace(spec, t, ZeroModes::include, Real(1e-9)).value;
    for (int k = 0; k < cols; ++k) design(i, k) = std::pow(t, Real(k - n) / Real(2));
  }

  Mat weighted = weights.asDiagonal() * design;
  Vec col_norms(cols);
  for (int k = 0; k < cols; ++k) {
    col_norms(k) = weighted.col(k).norm();
    if (!(col_norms(k) > Real(0)))
      throw FitError("fit_heat_coefficients: degenerate basis column; widen the t-grid");
    weighted.col(k) /= col_norms(k);
  }

  Eigen::JacobiSVD<Mat> svd(weighted, Eigen::ComputeThinU | Eigen::ComputeThinV);
  const Real cond = svd.singularValues()(0) / svd.singularValues()(cols - 1);
  if (!(cond < Real(1e12))) {
    std::ostringstream msg;
    msg << "fit_heat_coefficients: design matrix condition " << double(cond)
        << " too large; use a wider or denser t-grid or a lower order";
    throw FitError(msg.str());
  }

  const Vec rhs = weights.asDiagonal() * data;
  Vec scaled = svd.solve(rhs);
  Vec coeffs = scaled.array() / col_norms.array();

  const Vec residual_w = weighted * scaled - rhs;
  HeatCoefficients<Real> out;
  out.dim = n;
  out.coeffs.assign(coeffs.data(), coeffs.data() + cols);
  FitDiagnostics<Real> diag;
  diag.weighted_rms = residual_w.norm() / std::sqrt(Real(rows));
  diag.max_abs_residual = (residual_w.array() / weights.array()).abs().maxCoeff();
  diag.condition = cond;
  diag.t_grid = t_grid;
  out.fit = std::move(diag);
  return out;
}

/// Convenience overload on the documented default grid.
template <class Real>
HeatCoefficients<Real> fit_heat_coefficients(const Spectrum<Real>& spec, int order) {
  return fit_heat_coefficients(spec, order, default_fit_grid(spec));
}

}  // namespace spectralflow

#endif
