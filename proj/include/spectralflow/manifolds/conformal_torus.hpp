// Discretized conformally flat 2-tori. In two dimensions the Laplacian of
// g = e^{2u} g0 acting on functions is e^{-2u} Lap0, with Lap0 the flat
// operator of the base lattice. Second-order central differences on the
// periodic grid; the operator is symmetrized by the similarity transform
// e^{-u} Lap0 e^{-u} before the dense eigensolve.
#ifndef SPECTRALFLOW_MANIFOLDS_CONFORMAL_TORUS_HPP
#define SPECTRALFLOW_MANIFOLDS_CONFORMAL_TORUS_HPP

#include <Eigen/Dense>
#include <cmath>
#include <stdexcept>

#include "spectralflow/core/spectrum.hpp"
#include "spectralflow/manifolds/manifold_spec.hpp"

namespace spectralflow {

/// Flat positive Laplacian on a periodic N1 x N2 grid over the unit cell
/// of a 2d lattice, in lattice coordinates: Lap0 = -(gi^{ab} d_a d_b) with
/// gi the inverse Gram matrix of the basis.
template <class Real>
class FlatTorusLaplacian {
 public:
  using Grid = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;

  FlatTorusLaplacian(const Eigen::Matrix<Real, 2, 2>& basis, Eigen::Index n1, Eigen::Index n2)
      : n1_(n1), n2_(n2) {
    if (n1 < 3 || n2 < 3) throw std::invalid_argument("FlatTorusLaplacian: grid too small");
    FlatTorus<Real>{basis}.validate();
    const Eigen::Matrix<Real, 2, 2> gram = basis.transpose() * basis;
    const Eigen::Matrix<Real, 2, 2> gi = gram.inverse();
    const Real h1 = Real(1) / Real(n1), h2 = Real(1) / Real(n2);
    c11_ = gi(0, 0) / (h1 * h1);
    c22_ = gi(1, 1) / (h2 * h2);
    c12_ = gi(0, 1) / (h1 * h2);
    cell_volume_ = std::abs(basis.determinant()) * h1 * h2;
  }

  Eigen::Index rows() const { return n1_; }
  Eigen::Index cols() const { return n2_; }
  Eigen::Index size() const { return n1_ * n2_; }
  Real cell_volume() const { return cell_volume_; }

  /// Upper bound on the symbol of the operator (largest eigenvalue).
  Real symbol_bound() const { return Real(4) * c11_ + Real(4) * c22_ + Real(2) * std::abs(c12_); }

  /// Apply Lap0 to a grid function (stencil form, no matrix).
  Grid apply(const Grid& f) const {
    check(f);
    Grid out(n1_, n2_);
    for (Eigen::Index i = 0; i < n1_; ++i) {
      const Eigen::Index ip = (i + 1) % n1_, im = (i + n1_ - 1) % n1_;
      for (Eigen::Index j = 0; j < n2_; ++j) {
        const Eigen::Index jp = (j + 1) % n2_, jm = (j + n2_ - 1) % n2_;
        const Real dss = f(ip, j) - Real(2) * f(i, j) + f(im, j);
        const Real dtt = f(i, jp) - Real(2) * f(i, j) + f(i, jm);
        const Real dst = (f(ip, jp) - f(ip, jm) - f(im, jp) + f(im, jm)) / Real(4);
        out(i, j) = -(c11_ * dss + Real(2) * c12_ * dst + c22_ * dtt);
      }
    }
    return out;
  }

  /// Dense matrix of Lap0 in row-major grid ordering (index = i * N2 + j).
  Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> matrix() const {
    const Eigen::Index n = size();
    Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic> mat =
        Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>::Zero(n, n);
    auto idx = [this](Eigen::Index i, Eigen::Index j) {
      return ((i + n1_) % n1_) * n2_ + ((j + n2_) % n2_);
    };
    for (Eigen::Index i = 0; i < n1_; ++i) {
      for (Eigen::Index j = 0; j < n2_; ++j) {
        const Eigen::Index row = idx(i, j);
        mat(row, idx(i, j)) += Real(2) * c11_ + Real(2) * c22_;
        mat(row, idx(i + 1, j)) -= c11_;
        mat(row, idx(i - 1, j)) -= c11_;
        mat(row, idx(i, j + 1)) -= c22_;
        mat(row, idx(i, j - 1)) -= c22_;
        const Real q = c12_ / Real(2);
        mat(row, idx(i + 1, j + 1)) -= q;
        mat(row, idx(i - 1, j - 1)) -= q;
        mat(row, idx(i + 1, j - 1)) += q;
        mat(row, idx(i - 1, j + 1)) += q;
      }
    }
    return mat;
  }

 private:
  void check(const Grid& f) const {
    if (f.rows() != n1_ || f.cols() != n2_)
      throw std::invalid_argument("FlatTorusLaplacian: grid shape mismatch");
  }
  Eigen::Index n1_, n2_;
  Real c11_, c22_, c12_, cell_volume_;
};

/// Lowest `count` eigenvalues (with multiplicity) of e^{-2u} Lap0 on the
/// conformal torus, via the symmetric similarity e^{-u} Lap0 e^{-u}.
/// Discretized multiplicities are aggregated at relative tolerance 1e-9.
template <class Real>
Spectrum<Real> conformal_torus_spectrum(const ConformalTorus<Real>& spec, Eigen::Index count) {
  spec.validate();
  const FlatTorusLaplacian<Real> lap(spec.basis, spec.u.rows(), spec.u.cols());
  const Eigen::Index n = lap.size();
  if (count < 1 || count > n)
    throw std::invalid_argument("conformal_torus_spectrum: count must be in [1, grid size]");

  using Mat = Eigen::Matrix<Real, Eigen::Dynamic, Eigen::Dynamic>;
  using Vec = Eigen::Matrix<Real, Eigen::Dynamic, 1>;
  Vec scale(n);
  for (Eigen::Index i = 0; i < spec.u.rows(); ++i)
    for (Eigen::Index j = 0; j < spec.u.cols(); ++j)
      scale(i * spec.u.cols() + j) = std::exp(-spec.u(i, j));

  Mat sym = lap.matrix();
  sym = scale.asDiagonal() * sym * scale.asDiagonal();
  sym = ((sym + sym.transpose()) / Real(2)).eval();  // symmetrize roundoff

  Eigen::SelfAdjointEigenSolver<Mat> solver(sym, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success)
    throw std::runtime_error("conformal_torus_spectrum: eigensolver failed");
  Vec evals = solver.eigenvalues();

  // Clamp the discrete zero mode (constants) to exactly zero.
  const Real zero_tol = Real(64) * std::numeric_limits<Real>::epsilon() *
                        std::max(Real(1), std::abs(evals(n - 1)));
  std::vector<SpectrumEntry<Real>> raw;
  raw.reserve(static_cast<std::size_t>(count) + 8);
  Eigen::Index taken = 0;
  for (Eigen::Index i = 0; i < n && taken < count; ++i, ++taken)
    raw.push_back({std::abs(evals(i)) <= zero_tol ? Real(0) : evals(i), 1});
  // Do not split a near-degenerate group at the cut.
  while (taken < n &&
         evals(taken) - raw.back().eigenvalue <=
             Real(1e-9) * std::max(Real(1), evals(taken))) {
    raw.push_back({evals(taken), 1});
    ++taken;
  }

  Spectrum<Real> out;
  out.dim = 2;
  out.entries = merge_entries(std::move(raw), Real(1e-9));
  out.zero_modes = out.entries.front().eigenvalue == Real(0) ? out.entries.front().multiplicity : 0;
  out.source = SpectrumSource::discretized;
  out.cutoff = out.entries.back().eigenvalue;
  out.validate();
  return out;
}

}  // namespace spectralflow

#endif
