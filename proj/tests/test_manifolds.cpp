#include <Eigen/Dense>
#include <cmath>
#include <map>
#include <numbers>
#include <random>

#include "doctest.h"
#include "spectralflow/manifolds/conformal_torus.hpp"
#include "spectralflow/manifolds/curvature.hpp"
#include "spectralflow/manifolds/product.hpp"
#include "spectralflow/manifolds/sphere.hpp"
#include "spectralflow/manifolds/torus.hpp"

using namespace spectralflow;
namespace {

constexpr double kPi = std::numbers::pi;

std::int64_t mult_at(const Spectrum<double>& s, double lambda, double tol = 1e-9) {
  for (const auto& e : s.entries)
    if (std::abs(e.eigenvalue - lambda) <= tol * std::max(1.0, std::abs(lambda)))
      return e.multiplicity;
  return 0;
}

// Independent route to the harmonic multiplicities:
// (2k + n - 1) (k + n - 2)! / (k! (n-1)!).
std::int64_t harmonic_mult_oracle(int n, int k) {
  if (k == 0) return 1;
  auto fact = [](int m) {
    double f = 1;
    for (int i = 2; i <= m; ++i) f *= i;
    return f;
  };
  return std::llround((2.0 * k + n - 1) * fact(k + n - 2) / (fact(k) * fact(n - 1)));
}

}  // namespace

TEST_CASE("square torus spectrum matches integer-pair enumeration") {
  const auto spec = torus_spectrum(Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2) * 2 * kPi), 5.0);
  // Brute force: count p^2 + q^2 <= 5 over a window.
  std::map<long, std::int64_t> oracle;
  for (int p = -3; p <= 3; ++p)
    for (int q = -3; q <= 3; ++q)
      if (p * p + q * q <= 5) ++oracle[p * p + q * q];
  REQUIRE(spec.entries.size() == oracle.size());
  for (const auto& [lam, mult] : oracle) CHECK(mult_at(spec, double(lam)) == mult);

  CHECK(mult_at(spec, 0.0) == 1);
  CHECK(mult_at(spec, 1.0) == 4);
  CHECK(mult_at(spec, 2.0) == 4);
  CHECK(mult_at(spec, 4.0) == 4);
  CHECK(mult_at(spec, 5.0) == 8);
  CHECK(spec.zero_modes == 1);
  CHECK(spec.dim == 2);
}

TEST_CASE("1d lattice: lowest mode is (2 pi / L)^2 with multiplicity 2") {
  const double L = 3.7;
  Eigen::MatrixXd basis(1, 1);
  basis << L;
  const auto spec = torus_spectrum(basis, 10.0);
  const double expected = std::pow(2 * kPi / L, 2);
  CHECK(spec.min_positive() == doctest::Approx(expected).epsilon(1e-14));
  CHECK(mult_at(spec, expected) == 2);
}

TEST_CASE("degenerate lattice basis is rejected") {
  Eigen::MatrixXd basis(2, 2);
  basis << 1.0, 2.0, 2.0, 4.0;  // collinear columns
  CHECK_THROWS_AS(torus_spectrum(basis, 5.0), std::invalid_argument);
}

TEST_CASE("sphere spectra against the factorial multiplicity formula") {
  const auto s2 = sphere_spectrum(2, 1.0, 2);
  CHECK(mult_at(s2, 0.0) == 1);
  CHECK(mult_at(s2, 2.0) == 3);
  CHECK(mult_at(s2, 6.0) == 5);

  const auto s3 = sphere_spectrum(3, 1.0, 1);
  CHECK(s3.entries[1].eigenvalue == doctest::Approx(3.0));
  CHECK(s3.entries[1].multiplicity == 4);

  for (int n : {1, 2, 3, 4})
    for (int k = 0; k <= 12; ++k) CHECK(harmonic_multiplicity(n, k) == harmonic_mult_oracle(n, k));
}

TEST_CASE("metric scaling: doubling the radius divides eigenvalues by 4") {
  const auto a = sphere_spectrum(2, 1.0, 10);
  const auto b = sphere_spectrum(2, 2.0, 10);
  for (std::size_t i = 0; i < a.entries.size(); ++i) {
    CHECK(b.entries[i].eigenvalue == doctest::Approx(a.entries[i].eigenvalue / 4).epsilon(1e-15));
    CHECK(b.entries[i].multiplicity == a.entries[i].multiplicity);
  }
  // Same covariance on the torus via the basis.
  const double c = 1.7;
  const auto t1 = torus_spectrum(Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2) * 2 * kPi), 20.0);
  const auto t2 =
      torus_spectrum(Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2) * 2 * kPi * c), 20.0 / (c * c));
  for (std::size_t i = 0; i < t2.entries.size(); ++i)
    CHECK(t2.entries[i].eigenvalue ==
          doctest::Approx(t1.entries[i].eigenvalue / (c * c)).epsilon(1e-12));
}

TEST_CASE("product of circles equals the square torus") {
  Eigen::MatrixXd b1(1, 1);
  b1 << 2 * kPi;
  const auto circle = torus_spectrum(b1, 5.0);
  const auto prod = product_spectrum(circle, circle, 5.0);
  const auto torus = torus_spectrum(Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2) * 2 * kPi), 5.0);
  REQUIRE(prod.entries.size() == torus.entries.size());
  for (std::size_t i = 0; i < prod.entries.size(); ++i) {
    CHECK(prod.entries[i].eigenvalue ==
          doctest::Approx(torus.entries[i].eigenvalue).epsilon(1e-12));
    CHECK(prod.entries[i].multiplicity == torus.entries[i].multiplicity);
  }
  CHECK(prod.zero_modes == 1);
  CHECK(prod.dim == 2);
  for (const auto& e : prod.entries) CHECK(e.eigenvalue <= prod.cutoff);
}

TEST_CASE("product completeness equals brute-force pairwise enumeration") {
  const auto a = sphere_spectrum(2, 1.0, 12);
  const auto b = sphere_spectrum(3, 0.7, 12);
  const double cutoff = std::min(a.cutoff, b.cutoff) * 0.8;
  const auto prod = product_spectrum(a, b, cutoff);

  std::int64_t count = 0;
  for (const auto& ea : a.entries)
    for (const auto& eb : b.entries)
      if (ea.eigenvalue + eb.eigenvalue <= cutoff) count += ea.multiplicity * eb.multiplicity;
  CHECK(prod.total_multiplicity() == count);
  CHECK(prod.dim == 5);
  CHECK(prod.zero_modes == 1);

  CHECK_THROWS_AS(product_spectrum(a, b, std::min(a.cutoff, b.cutoff) * 2.0),
                  std::invalid_argument);
}

TEST_CASE("conformal torus with u = 0 recovers the flat spectrum") {
  ConformalTorus<double> ct;
  ct.basis << 2 * kPi, 0, 0, 2 * kPi;
  SUBCASE("64x64 grid: first positive eigenvalue near 1, second-order in h") {
    ct.u = Eigen::MatrixXd::Zero(64, 64);
    const auto spec = conformal_torus_spectrum(ct, 8);
    const double h2 = std::pow(2 * kPi / 64, 2);
    CHECK(spec.zero_modes == 1);
    CHECK(std::abs(spec.min_positive() - 1.0) < h2);  // O(h^2) discretization error
    CHECK(spec.source == SpectrumSource::discretized);
    CHECK(mult_at(spec, spec.min_positive(), 1e-6) == 4);

    ct.u = Eigen::MatrixXd::Zero(32, 32);
    const auto coarse = conformal_torus_spectrum(ct, 8);
    const double ratio =
        std::abs(coarse.min_positive() - 1.0) / std::abs(spec.min_positive() - 1.0);
    CHECK(ratio == doctest::Approx(4.0).epsilon(0.1));
  }
  SUBCASE("constant u rescales all eigenvalues by e^{-2c}") {
    ct.u = Eigen::MatrixXd::Zero(16, 16);
    const auto flat = conformal_torus_spectrum(ct, 30);
    ct.u = Eigen::MatrixXd::Constant(16, 16, 0.3);
    const auto scaled = conformal_torus_spectrum(ct, 30);
    const double factor = std::exp(-0.6);
    REQUIRE(flat.entries.size() == scaled.entries.size());
    for (std::size_t i = 0; i < flat.entries.size(); ++i)
      CHECK(scaled.entries[i].eigenvalue ==
            doctest::Approx(flat.entries[i].eigenvalue * factor).epsilon(1e-12));
  }
}

TEST_CASE("conformal torus matches a dense nonsymmetric diagonalization") {
  const int n = 16;
  ConformalTorus<double> ct;
  ct.basis << 2 * kPi, 0, 0, 2 * kPi;
  ct.u.resize(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) ct.u(i, j) = 0.1 * std::cos(2 * kPi * i / n);

  // Oracle: assemble e^{-2u} Lap0 directly and use the general eigensolver.
  const FlatTorusLaplacian<double> lap(ct.basis, n, n);
  Eigen::MatrixXd op = lap.matrix();
  Eigen::VectorXd d(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) d(i * n + j) = std::exp(-2.0 * ct.u(i, j));
  op = d.asDiagonal() * op;
  Eigen::EigenSolver<Eigen::MatrixXd> general(op, false);
  std::vector<double> oracle;
  for (int i = 0; i < n * n; ++i) {
    CHECK(std::abs(general.eigenvalues()(i).imag()) < 1e-9);
    oracle.push_back(general.eigenvalues()(i).real());
  }
  std::sort(oracle.begin(), oracle.end());

  const auto spec = conformal_torus_spectrum(ct, n * n);
  std::vector<double> ours;
  for (const auto& e : spec.entries)
    for (int m = 0; m < e.multiplicity; ++m) ours.push_back(e.eigenvalue);
  REQUIRE(ours.size() >= oracle.size());
  for (std::size_t i = 0; i < oracle.size(); ++i)
    CHECK(std::abs(ours[i] - oracle[i]) < 1e-10 * std::max(1.0, std::abs(oracle[i])));
}

TEST_CASE("stencil application matches the assembled operator matrix") {
  ConformalTorus<double> ct;
  ct.basis << 2 * kPi, 0.7, 0.3, 2 * kPi;  // non-orthogonal lattice, cross terms active
  const FlatTorusLaplacian<double> lap(ct.basis, 12, 10);
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  Eigen::MatrixXd f(12, 10);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 10; ++j) f(i, j) = dist(rng);
  const auto via_stencil = lap.apply(f);
  Eigen::VectorXd flat(120);
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 10; ++j) flat(i * 10 + j) = f(i, j);
  const Eigen::VectorXd via_matrix = lap.matrix() * flat;
  for (int i = 0; i < 12; ++i)
    for (int j = 0; j < 10; ++j)
      CHECK(via_stencil(i, j) == doctest::Approx(via_matrix(i * 10 + j)).epsilon(1e-13));
  // Constants stay in the kernel regardless of the lattice.
  CHECK(lap.apply(Eigen::MatrixXd::Constant(12, 10, 3.0)).array().abs().maxCoeff() <= 1e-12);
}

TEST_CASE("oblique lattice: discretized spectrum approaches the exact one") {
  Eigen::MatrixXd basis(2, 2);
  basis << 2 * kPi, 1.0, 0.0, 2 * kPi;
  const auto exact = torus_spectrum(basis, 6.0);

  ConformalTorus<double> ct;
  ct.basis = basis;
  ct.u = Eigen::MatrixXd::Zero(48, 48);
  const auto discrete = conformal_torus_spectrum(ct, 6);
  CHECK(discrete.zero_modes == 1);
  const double h2 = std::pow(1.0 / 48, 2) * basis.squaredNorm();
  CHECK(std::abs(discrete.min_positive() - exact.min_positive()) <
        h2 * exact.min_positive());
}

TEST_CASE("conformal torus input validation") {
  ConformalTorus<double> ct;
  ct.basis << 2 * kPi, 0, 0, 2 * kPi;
  ct.u = Eigen::MatrixXd::Zero(4, 4);
  CHECK_THROWS_AS(conformal_torus_spectrum(ct, 2), std::invalid_argument);  // grid too coarse
  ct.u = Eigen::MatrixXd::Zero(16, 16);
  CHECK_THROWS_AS(conformal_torus_spectrum(ct, 16 * 16 + 1), std::invalid_argument);
}

TEST_CASE("curvature invariants of the model manifolds") {
  SUBCASE("flat torus: everything vanishes") {
    const auto c = curvature_invariants(make_square_torus(2, 2 * kPi));
    CHECK(c.vol == doctest::Approx(4 * kPi * kPi));
    CHECK(c.int_R == 0.0);
    CHECK(c.int_R2 == 0.0);
    CHECK(c.int_Riem2 == 0.0);
    CHECK(c.euler_char == 0);
  }
  SUBCASE("unit S2: Gauss-Bonnet") {
    const auto c = curvature_invariants(make_sphere(2, 1.0));
    CHECK(c.vol == doctest::Approx(4 * kPi).epsilon(1e-14));
    CHECK(c.int_R == doctest::Approx(8 * kPi).epsilon(1e-14));
    CHECK(c.euler_char == 2);
    CHECK(c.int_R == doctest::Approx(4 * kPi * *c.euler_char).epsilon(1e-14));
  }
  SUBCASE("unit S4: Gauss-Bonnet-Chern and conformal flatness") {
    const auto c = curvature_invariants(make_sphere(4, 1.0));
    CHECK(c.vol == doctest::Approx(8 * kPi * kPi / 3).epsilon(1e-14));
    CHECK(c.int_W2 == doctest::Approx(0.0));
    CHECK(c.int_E4 / (32 * kPi * kPi) == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(c.euler_char == 2);
  }
  SUBCASE("S2 x S2 has Euler characteristic 4") {
    const auto c = curvature_invariants(make_product(make_sphere(2, 1.0), make_sphere(2, 0.5)));
    CHECK(c.dim == 4);
    CHECK(c.euler_char == 4);
    CHECK(c.int_W2 > 0.0);
  }
  SUBCASE("conformal torus: total curvature integrates to zero") {
    ConformalTorus<double> ct;
    ct.basis << 2 * kPi, 0, 0, 2 * kPi;
    ct.u.resize(32, 32);
    for (int i = 0; i < 32; ++i)
      for (int j = 0; j < 32; ++j)
        ct.u(i, j) = 0.2 * std::cos(2 * kPi * i / 32.0) * std::sin(2 * kPi * j / 32.0);
    const auto c = curvature_invariants(ManifoldSpec<double>{ct});
    CHECK(std::abs(c.int_R) < 1e-10);
    CHECK(c.euler_char == 0);
    CHECK(c.int_R2 > 0.0);
    CHECK(c.int_Riem2 == doctest::Approx(c.int_R2));
    CHECK(c.int_Ric2 == doctest::Approx(c.int_R2 / 2));
  }
  SUBCASE("products containing conformal tori are unsupported") {
    ConformalTorus<double> ct;
    ct.basis << 2 * kPi, 0, 0, 2 * kPi;
    ct.u = Eigen::MatrixXd::Zero(8, 8);
    CHECK_THROWS_AS(
        curvature_invariants(make_product(ManifoldSpec<double>{ct}, make_sphere(2, 1.0))),
        UnsupportedManifoldError);
  }
}

TEST_CASE("Weyl law: counting function approaches the leading term") {
  // N(lambda) * (4 pi)^{n/2} Gamma(n/2 + 1) / (vol lambda^{n/2}) -> 1.
  SUBCASE("square torus") {
    const double cutoff = 3500.0;
    const auto spec =
        torus_spectrum(Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2) * 2 * kPi), cutoff);
    REQUIRE(spec.total_multiplicity() >= 10000);
    const double vol = 4 * kPi * kPi;
    const double ratio =
        double(spec.counting(cutoff)) * 4 * kPi * std::tgamma(2.0) / (vol * cutoff);
    CHECK(ratio == doctest::Approx(1.0).epsilon(0.05));
  }
  SUBCASE("unit S2") {
    const auto spec = sphere_spectrum(2, 1.0, 110);
    REQUIRE(spec.total_multiplicity() >= 10000);
    const double vol = 4 * kPi;
    const double ratio =
        double(spec.counting(spec.cutoff)) * 4 * kPi / (vol * spec.cutoff);
    CHECK(ratio == doctest::Approx(1.0).epsilon(0.05));
  }
}

TEST_CASE("spectrum helpers: shift and scale") {
  const auto s2 = sphere_spectrum(2, 1.0, 20);
  const auto shifted = shift_spectrum(s2, 1.0);
  CHECK(shifted.zero_modes == 0);
  CHECK(shifted.entries.front().eigenvalue == doctest::Approx(1.0));
  CHECK(shifted.entries.front().multiplicity == 1);
  CHECK_THROWS_AS(shift_spectrum(s2, -0.5), std::invalid_argument);

  const auto scaled = scale_spectrum(s2, 2.0);
  CHECK(scaled.entries[1].eigenvalue == doctest::Approx(4.0));
  CHECK(scaled.zero_modes == 1);
}

TEST_CASE("heat tail bound dominates the true tail for exact spectra") {
  // Compare against a much larger cutoff on the same manifold.
  const auto coarse =
      torus_spectrum(Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2) * 2 * kPi), 400.0);
  const auto fine =
      torus_spectrum(Eigen::MatrixXd(Eigen::MatrixXd::Identity(2, 2) * 2 * kPi), 4000.0);
  for (double t : {0.02, 0.05, 0.1, 0.5}) {
    double coarse_sum = 0, fine_sum = 0;
    for (const auto& e : coarse.entries) coarse_sum += e.multiplicity * std::exp(-e.eigenvalue * t);
    for (const auto& e : fine.entries) fine_sum += e.multiplicity * std::exp(-e.eigenvalue * t);
    const double true_tail = fine_sum - coarse_sum;
    CHECK(true_tail <= heat_tail_bound(coarse, t));
  }
}
