// End-to-end checks of the CLI binary: exit codes, artifact shapes,
// determinism. The binary path and scratch dir come from the build.
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include <json.hpp>

namespace fs = std::filesystem;

namespace {

const std::string kCli = SPECTRALFLOW_CLI_PATH;
const fs::path kTmp = SPECTRALFLOW_TEST_TMPDIR;

int run_cli(const std::string& args) {
  const std::string cmd = kCli + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& p) {
  std::ifstream is(p, std::ios::binary);
  std::ostringstream os;
  os << is.rdbuf();
  return os.str();
}

struct TmpDir {
  TmpDir() { fs::create_directories(kTmp); }
} tmpdir_guard;

}  // namespace

TEST_CASE("spectrum CSV: sphere kmax 50 has 51 rows, first row 0,1") {
  const fs::path out = kTmp / "s2.csv";
  fs::remove(out);
  REQUIRE(run_cli("spectrum --manifold sphere:2:1 --kmax 50 --out " + out.string()) == 0);
  const std::string body = slurp(out);
  CHECK(body.substr(0, 4) == "0,1\n");
  CHECK(std::count(body.begin(), body.end(), '\n') == 51);
}

TEST_CASE("zeta JSON for the circle reports zeta0 = -1") {
  const fs::path out = kTmp / "circle_zeta.json";
  fs::remove(out);
  REQUIRE(run_cli("zeta --manifold circle:6.28318530718 --order 8 --out " + out.string()) == 0);
  const auto j = nlohmann::json::parse(slurp(out));
  CHECK(std::abs(j["zeta0"].get<double>() + 1.0) < 1e-6);
  CHECK(std::abs(j["zeta0_prime"].get<double>() + 2 * std::log(2 * 3.14159265358979)) < 1e-4);
}

TEST_CASE("malformed manifold: exit 2 and no artifact") {
  const fs::path out = kTmp / "bad.csv";
  fs::remove(out);
  CHECK(run_cli("spectrum --manifold klein:1:2 --out " + out.string()) == 2);
  CHECK_FALSE(fs::exists(out));
  CHECK(run_cli("spectrum --manifold sphere:2 --out " + out.string()) == 2);
  CHECK_FALSE(fs::exists(out));
}

TEST_CASE("accuracy failures exit 3") {
  // A 30-level sphere cannot support the default fit window.
  CHECK(run_cli("heat --manifold sphere:2:1 --kmax 12 --order 6") == 3);
}

TEST_CASE("identical configs produce byte-identical artifacts") {
  const fs::path out1 = kTmp / "det1.json", out2 = kTmp / "det2.json";
  const std::string args =
      "zeta --manifold circle:6.28318530718 --order 8 --scale 1.0 --cutoff 100000 --out ";
  REQUIRE(run_cli(args + out1.string()) == 0);
  REQUIRE(run_cli(args + out2.string()) == 0);
  const std::string b1 = slurp(out1), b2 = slurp(out2);
  CHECK(!b1.empty());
  CHECK(b1 == b2);
}

TEST_CASE("config file drives a run and unknown keys are rejected") {
  const fs::path conf = kTmp / "run.conf";
  const fs::path out = kTmp / "conf_run.csv";
  {
    std::ofstream os(conf);
    os << "[spectrum]\nmanifold=sphere:2:1\nkmax=3\nout=" << out.string() << "\n";
  }
  fs::remove(out);
  REQUIRE(run_cli("--config " + conf.string() + " spectrum") == 0);
  CHECK(slurp(out).substr(0, 4) == "0,1\n");

  const fs::path bad = kTmp / "bad.conf";
  {
    std::ofstream os(bad);
    os << "[spectrum]\nmanifold=sphere:2:1\nflux_capacitor=1\n";
  }
  CHECK(run_cli("--config " + bad.string() + " spectrum") == 2);
}

TEST_CASE("thermo, rg-step, holo, anomaly and ricci produce artifacts") {
  CHECK(run_cli("thermo --manifold sphere:2:1 --kmax 60 --beta-points 20 --out " +
                (kTmp / "thermo.csv").string()) == 0);
  CHECK(slurp(kTmp / "thermo.csv").substr(0, 5) == "beta,");

  CHECK(run_cli("rg-step --manifold sphere:2:1 --scale 10 --scale-prime 5 --out " +
                (kTmp / "rg.json").string()) == 0);
  const auto rg = nlohmann::json::parse(slurp(kTmp / "rg.json"));
  CHECK(rg.contains("log_part"));

  CHECK(run_cli("holo --manifold torus:6.283185307179586 --lambda0 1.0 --out " +
                (kTmp / "holo.csv").string()) == 0);
  CHECK(slurp(kTmp / "holo.csv").substr(0, 4) == "rho,");

  CHECK(run_cli("anomaly --manifold sphere:4:1 --a-charge 1 --c-charge 0 --out " +
                (kTmp / "anomaly.json").string()) == 0);
  const auto an = nlohmann::json::parse(slurp(kTmp / "anomaly.json"));
  CHECK(std::abs(an["anomaly"].get<double>() + 4.0) < 1e-9);
  CHECK(run_cli("anomaly --manifold sphere:3:1") == 2);  // unsupported dimension

  CHECK(run_cli("ricci --manifold sphere:2:1 --samples 10 --eigs 3 --out " +
                (kTmp / "ricci.csv").string()) == 0);
  CHECK(slurp(kTmp / "ricci.csv").substr(0, 2) == "t,");

  CHECK(run_cli("ricci --manifold ctorus:6.2831853:16:0.1:1 --steps 40 --sample-every 20 "
                "--eigs 2 --out " +
                (kTmp / "ricci_ct.csv").string()) == 0);
  CHECK(slurp(kTmp / "ricci_ct.csv").find("crossing") != std::string::npos);

  CHECK(run_cli("polyakov-check --grid 16 --trials 5 --out " +
                (kTmp / "poly.json").string()) == 0);
  const auto poly = nlohmann::json::parse(slurp(kTmp / "poly.json"));
  CHECK(poly["max_residual"].get<double>() <= 1e-12);
}

TEST_CASE("ricci flow past extinction exits 3") {
  CHECK(run_cli("ricci --manifold sphere:2:1 --time 0.6 --samples 5") == 3);
}
