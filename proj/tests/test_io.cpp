#include <numbers>
#include <random>
#include <sstream>

#include "doctest.h"
#include "spectralflow/io/csv.hpp"
#include "spectralflow/io/json_io.hpp"
#include "spectralflow/io/manifold_parse.hpp"
#include "spectralflow/manifolds/sphere.hpp"
#include "spectralflow/thermo/thermo.hpp"

using namespace spectralflow;

TEST_CASE("spectrum CSV: no header, zero mode first") {
  const auto s2 = sphere_spectrum(2, 1.0, 2);
  std::ostringstream os;
  write_spectrum_csv(os, s2);
  CHECK(os.str() == "0,1\n2,3\n6,5\n");
}

TEST_CASE("manifold specs survive a JSON round trip") {
  std::mt19937 rng(7);
  std::uniform_real_distribution<double> dist(0.5, 2.0);

  auto round_trip = [](const ManifoldSpec<double>& spec) {
    json j = spec;
    ManifoldSpec<double> back;
    from_json(json::parse(j.dump()), back);
    json j2 = back;
    CHECK(j == j2);
  };

  round_trip(make_sphere(3, dist(rng)));
  round_trip(make_square_torus(2, 2 * std::numbers::pi));
  round_trip(make_product(make_sphere(2, 1.0), make_circle(dist(rng))));

  ConformalTorus<double> ct;
  ct.basis << 2 * std::numbers::pi, 0, 0.3, 2 * std::numbers::pi;
  ct.u.resize(8, 8);
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) ct.u(i, j) = 0.1 * std::sin(i + 2.0 * j);
  round_trip(ManifoldSpec<double>{ct});

  CHECK_THROWS_AS(
      [] {
        ManifoldSpec<double> bad;
        from_json(json::parse(R"({"kind":"klein_bottle"})"), bad);
      }(),
      std::invalid_argument);
}

TEST_CASE("heat coefficients and zeta data serialize with all fields") {
  HeatCoefficients<double> hc;
  hc.dim = 2;
  hc.coeffs = {1.0, 0.0, 1.0 / 3};
  json j = hc;
  CHECK(j["dim"] == 2);
  CHECK(j["coeffs"]["2"] == doctest::Approx(1.0 / 3));
  CHECK_FALSE(j.contains("residual"));

  ZetaData<double> zd;
  zd.dim = 2;
  zd.zeta0 = -2.0 / 3;
  zd.zeta0_prime = 0.5;
  zd.residues[1.0] = 1.0;
  zd.zero_modes_subtracted = 1;
  zd.expansion_order = 4;
  zd.error_estimate = 1e-10;
  json jz = zd;
  CHECK(jz["zeta0"] == doctest::Approx(-2.0 / 3));
  CHECK(jz["residues"]["1"] == doctest::Approx(1.0));
  CHECK(jz["zero_modes_subtracted"] == 1);
}

TEST_CASE("real formatting is locale-free and full precision") {
  CHECK(format_real(0.0) == "0");
  CHECK(format_real(1.5) == "1.5");
  const double pi = std::numbers::pi;
  CHECK(std::stod(format_real(pi)) == pi);  // 17 digits round-trip
}

TEST_CASE("manifold mini-language") {
  const auto sphere = parse_manifold("sphere:3:0.5");
  CHECK(sphere.dim() == 3);
  CHECK(std::get<RoundSphere<double>>(sphere.kind).radius == doctest::Approx(0.5));

  const auto general = parse_manifold("torus:1,0;0.5,2");
  const auto& t = std::get<FlatTorus<double>>(general.kind);
  CHECK(std::abs(t.basis.determinant()) == doctest::Approx(2.0));  // rows are basis vectors

  const auto prod = parse_manifold("circle:6.2832*sphere:2:1*circle:1");
  CHECK(prod.dim() == 4);

  const auto ct = parse_manifold("ctorus:6.2832:16:0.1:1:2");
  CHECK(std::get<ConformalTorus<double>>(ct.kind).u.rows() == 16);

  CHECK_THROWS_AS(parse_manifold(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_manifold("sphere:2:abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_manifold("torus:1,0;1,0"), std::invalid_argument);  // degenerate
  CHECK_THROWS_AS(parse_manifold("ctorus:6.28:4:0.1:1"), std::invalid_argument);  // coarse grid
}

TEST_CASE("scale identification helper") {
  CHECK(beta_from_scale(10.0) == doctest::Approx(0.01));
  CHECK_THROWS_AS(beta_from_scale(0.0), std::invalid_argument);
}
