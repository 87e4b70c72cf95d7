// spectralflow: batch CLI over the spectral-geometry toolkit. Every
// subcommand computes its artifact fully before anything is written, so a
// failed run leaves no file behind; identical configs produce
// byte-identical artifacts.
#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>
#include <string>

#include "spectralflow/acceptance.hpp"
#include "spectralflow/io/csv.hpp"
#include "spectralflow/io/json_io.hpp"
#include "spectralflow/io/manifold_parse.hpp"
#include "spectralflow/spectralflow.hpp"

namespace sf = spectralflow;

namespace {

struct Artifact {
  std::string path;  // empty -> stdout
  std::string content;
};

void emit(const Artifact& artifact) {
  if (artifact.path.empty()) {
    std::cout << artifact.content;
    return;
  }
  std::ofstream os(artifact.path, std::ios::binary);
  if (!os) throw std::invalid_argument("cannot open output path '" + artifact.path + "'");
  os << artifact.content;
}

std::string dump_json(const sf::json& j) { return j.dump(2) + "\n"; }

struct CommonOpts {
  std::string manifold;
  double cutoff = 1000.0;
  int k_max = -1;
  int count = 64;
  std::string out;
  std::string format = "csv";

  sf::ManifoldSpec<double> spec() const { return sf::parse_manifold(manifold); }
  sf::SpectrumKnobs knobs() const { return {cutoff, k_max, count}; }
};

void add_common(CLI::App* cmd, CommonOpts& o, double default_cutoff, bool with_format = false) {
  o.cutoff = default_cutoff;
  cmd->configurable();
  cmd->add_option("--manifold", o.manifold, "manifold string (see README)")->required();
  cmd->add_option("--cutoff", o.cutoff, "eigenvalue cutoff for lattice/product spectra");
  cmd->add_option("--kmax", o.k_max, "sphere level cap (derived from --cutoff when unset)");
  cmd->add_option("--count", o.count, "eigenvalue count for discretized spectra");
  cmd->add_option("--out", o.out, "output path (stdout when unset)");
  if (with_format)
    cmd->add_option("--format", o.format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
}

sf::HeatCoefficients<double> coefficients_for(const CommonOpts& common,
                                              const sf::Spectrum<double>& spectrum,
                                              const std::string& source, int order, double mass,
                                              double t_max, int points) {
  if (source == "closed") {
    const auto curv = sf::curvature_invariants(common.spec());
    return sf::seeley_dewitt(curv, 1.0, -mass, order);
  }
  return sf::fit_heat_coefficients(spectrum, order,
                                   sf::default_fit_grid(spectrum, points, t_max));
}

int run(int argc, char** argv) {
  CLI::App app{"spectralflow: heat-kernel, zeta and RG-flow computations on model manifolds"};
  app.set_config("--config", "", "key=value config file (CLI flags override)");
  app.allow_config_extras(false);
  app.fallthrough();
  app.require_subcommand(1);

  // ---- spectrum ----
  auto spectrum_opts = std::make_shared<CommonOpts>();
  {
    auto* cmd = app.add_subcommand("spectrum", "eigenvalue/multiplicity table");
    add_common(cmd, *spectrum_opts, 1000.0, true);
    cmd->callback([spectrum_opts] {
      const auto spec = sf::spectrum_of(spectrum_opts->spec(), spectrum_opts->knobs());
      Artifact artifact{spectrum_opts->out, {}};
      if (spectrum_opts->format == "json") {
        artifact.content = dump_json(sf::json(spec));
      } else {
        std::ostringstream os;
        sf::write_spectrum_csv(os, spec);
        artifact.content = os.str();
      }
      emit(artifact);
    });
  }

  // ---- heat ----
  auto heat_opts = std::make_shared<CommonOpts>();
  auto heat_order = std::make_shared<int>(-1);
  auto heat_source = std::make_shared<std::string>("fitted");
  auto heat_mass = std::make_shared<double>(0.0);
  auto heat_tmax = std::make_shared<double>(0.2);
  auto heat_points = std::make_shared<int>(24);
  {
    auto* cmd = app.add_subcommand("heat", "heat-kernel coefficients (fitted or closed form)");
    add_common(cmd, *heat_opts, 50000.0);
    cmd->add_option("--order", *heat_order, "expansion order K (default dim + 4 fitted, 4 closed)");
    cmd->add_option("--coeffs", *heat_source, "fitted or closed")
        ->check(CLI::IsMember({"fitted", "closed"}));
    cmd->add_option("--mass", *heat_mass, "mass-squared shift: operator D = Lap + m^2");
    cmd->add_option("--tmax", *heat_tmax, "upper edge of the fit grid");
    cmd->add_option("--points", *heat_points, "fit grid size");
    cmd->callback([=] {
      const auto manifold = heat_opts->spec();
      auto spectrum = sf::spectrum_of(manifold, heat_opts->knobs());
      if (*heat_mass != 0.0) spectrum = sf::shift_spectrum(spectrum, *heat_mass);
      const int order = *heat_order >= 0 ? *heat_order
                        : (*heat_source == "closed" ? 4 : manifold.dim() + 4);
      const auto coeffs = coefficients_for(*heat_opts, spectrum, *heat_source, order, *heat_mass,
                                           *heat_tmax, *heat_points);
      emit({heat_opts->out, dump_json(sf::json(coeffs))});
    });
  }

  // ---- zeta ----
  auto zeta_opts = std::make_shared<CommonOpts>();
  auto zeta_order = std::make_shared<int>(-1);
  auto zeta_source = std::make_shared<std::string>("closed");
  auto zeta_mass = std::make_shared<double>(0.0);
  auto zeta_scale = std::make_shared<double>(0.0);
  auto zeta_mu = std::make_shared<double>(0.0);
  {
    auto* cmd = app.add_subcommand("zeta", "zeta(0), zeta'(0), residues, determinants");
    add_common(cmd, *zeta_opts, 50000.0, true);
    zeta_opts->format = "json";
    cmd->add_option("--order", *zeta_order, "expansion order K (default dim + 2)");
    cmd->add_option("--coeffs", *zeta_source, "fitted or closed")
        ->check(CLI::IsMember({"fitted", "closed"}));
    cmd->add_option("--mass", *zeta_mass, "mass-squared shift: operator D = Lap + m^2");
    cmd->add_option("--scale", *zeta_scale, "also report log_det at this scale");
    cmd->add_option("--mu", *zeta_mu, "also report the effective action at this scale");
    cmd->callback([=] {
      const auto manifold = zeta_opts->spec();
      auto spectrum = sf::spectrum_of(manifold, zeta_opts->knobs());
      if (*zeta_mass != 0.0) spectrum = sf::shift_spectrum(spectrum, *zeta_mass);
      const int order = *zeta_order >= 0 ? *zeta_order : manifold.dim() + 2;
      const auto coeffs =
          coefficients_for(*zeta_opts, spectrum, *zeta_source, order, *zeta_mass, 0.2, 24);
      const auto zd = sf::zeta_analytic(spectrum, coeffs, order);
      if (zeta_opts->format == "csv") {
        std::ostringstream os;
        sf::write_zeta_csv(os, zd);
        emit({zeta_opts->out, os.str()});
        return;
      }
      sf::json j = zd;
      if (*zeta_scale > 0.0) j["log_det"] = sf::log_det(zd, *zeta_scale);
      if (*zeta_mu > 0.0) j["effective_action"] = sf::effective_action(zd, *zeta_mu);
      emit({zeta_opts->out, dump_json(j)});
    });
  }

  // ---- ricci ----
  auto ricci_opts = std::make_shared<CommonOpts>();
  auto ricci_time = std::make_shared<double>(-1.0);
  auto ricci_samples = std::make_shared<int>(50);
  auto ricci_dt = std::make_shared<double>(0.0);
  auto ricci_steps = std::make_shared<int>(1000);
  auto ricci_eigs = std::make_shared<int>(5);
  auto ricci_every = std::make_shared<int>(100);
  {
    auto* cmd = app.add_subcommand("ricci", "Ricci flow trajectory (sphere or conformal torus)");
    add_common(cmd, *ricci_opts, 1000.0);
    cmd->add_option("--time", *ricci_time, "sphere: total flow time (default 0.9 T_ext)");
    cmd->add_option("--samples", *ricci_samples, "sphere: number of CSV samples");
    cmd->add_option("--dt", *ricci_dt, "conformal torus: step (default 0.1 stability bound)");
    cmd->add_option("--steps", *ricci_steps, "conformal torus: step count");
    cmd->add_option("--eigs", *ricci_eigs, "lowest eigenvalues to track");
    cmd->add_option("--sample-every", *ricci_every, "conformal torus: sampling stride");
    cmd->callback([=] {
      const auto manifold = ricci_opts->spec();
      std::ostringstream os;
      if (const auto* sphere = std::get_if<sf::RoundSphere<double>>(&manifold.kind)) {
        const double t_ext = sf::sphere_extinction_time(sphere->n, sphere->radius);
        const double total = *ricci_time > 0 ? *ricci_time : 0.9 * t_ext;
        os << "t,radius";
        for (int k = 1; k <= *ricci_eigs; ++k) os << ",lambda_" << k;
        os << "\n";
        for (int s = 0; s <= *ricci_samples; ++s) {
          const double t = total * s / *ricci_samples;
          const double r = sf::ricci_flow_sphere(sphere->n, sphere->radius, t);
          os << sf::format_real(t) << ',' << sf::format_real(r);
          const auto spec = sf::sphere_spectrum(sphere->n, r, *ricci_eigs);
          for (int k = 1; k <= *ricci_eigs; ++k)
            os << ',' << sf::format_real(spec.entries[k].eigenvalue);
          os << "\n";
        }
      } else if (const auto* ct = std::get_if<sf::ConformalTorus<double>>(&manifold.kind)) {
        const sf::FlatTorusLaplacian<double> lap(ct->basis, ct->u.rows(), ct->u.cols());
        const double dt =
            *ricci_dt > 0 ? *ricci_dt : 0.1 * sf::conformal_flow_max_step(lap, ct->u);
        os << "t,area,oscillation";
        for (int k = 1; k <= *ricci_eigs; ++k) os << ",lambda_" << k;
        os << ",crossing\n";
        std::vector<double> previous;
        const auto sample = [&](double t, const Eigen::MatrixXd& u) {
          const double area = (2.0 * u.array()).exp().sum() * lap.cell_volume();
          const double osc = (u.array() - u.mean()).abs().maxCoeff();
          os << sf::format_real(t) << ',' << sf::format_real(area) << ',' << sf::format_real(osc);
          int crossing = 0;
          if (*ricci_eigs > 0) {
            sf::ConformalTorus<double> state{ct->basis, u};
            const auto spec =
                sf::conformal_torus_spectrum(state, std::min<Eigen::Index>(
                                                          *ricci_eigs + 1, u.size()));
            std::vector<double> lowest;
            for (const auto& e : spec.entries)
              for (int m = 0; m < e.multiplicity && int(lowest.size()) < *ricci_eigs + 1; ++m)
                lowest.push_back(e.eigenvalue);
            // Index-order tracking: flag when a nearer cross-pairing exists
            // between consecutive samples (possible eigenvalue crossing).
            if (!previous.empty()) {
              for (std::size_t i = 0; i + 1 < lowest.size() && i + 1 < previous.size(); ++i) {
                const double direct = std::abs(lowest[i] - previous[i]) +
                                      std::abs(lowest[i + 1] - previous[i + 1]);
                const double swapped = std::abs(lowest[i] - previous[i + 1]) +
                                       std::abs(lowest[i + 1] - previous[i]);
                if (swapped < direct) crossing = 1;
              }
            }
            previous = lowest;
            for (int k = 1; k <= *ricci_eigs && k < int(lowest.size()) + 1; ++k)
              os << ',' << sf::format_real(lowest[std::size_t(k)]);
          }
          os << ',' << crossing << "\n";
        };
        sample(0.0, ct->u);
        sf::ricci_flow_conformal_torus(*ct, dt, *ricci_steps,
                                       [&](int step, double t, const Eigen::MatrixXd& u) {
                                         if (step % *ricci_every == 0) sample(t, u);
                                       });
      } else {
        throw std::invalid_argument("ricci: manifold must be sphere:... or ctorus:...");
      }
      emit({ricci_opts->out, os.str()});
    });
  }

  // ---- rg-step ----
  auto rg_opts = std::make_shared<CommonOpts>();
  auto rg_scale = std::make_shared<double>(10.0);
  auto rg_scale_prime = std::make_shared<double>(5.0);
  auto rg_order = std::make_shared<int>(-1);
  auto rg_source = std::make_shared<std::string>("closed");
  {
    auto* cmd = app.add_subcommand("rg-step", "RG eigenvalue step between two cutoffs");
    add_common(cmd, *rg_opts, 50000.0);
    cmd->add_option("--scale", *rg_scale, "Lambda")->required();
    cmd->add_option("--scale-prime", *rg_scale_prime, "Lambda'")->required();
    cmd->add_option("--order", *rg_order, "expansion order K (default dim + 2)");
    cmd->add_option("--coeffs", *rg_source, "fitted or closed")
        ->check(CLI::IsMember({"fitted", "closed"}));
    cmd->callback([=] {
      const auto manifold = rg_opts->spec();
      const auto spectrum = sf::spectrum_of(manifold, rg_opts->knobs());
      const int order = *rg_order >= 0 ? *rg_order : manifold.dim() + 2;
      const auto coeffs = coefficients_for(*rg_opts, spectrum, *rg_source, order, 0.0, 0.2, 24);
      const auto rep = sf::rg_eigenvalue_step(spectrum, coeffs, *rg_scale, *rg_scale_prime);
      emit({rg_opts->out, dump_json(sf::json(rep))});
    });
  }

  // ---- polyakov-check ----
  auto poly_grid = std::make_shared<int>(24);
  auto poly_trials = std::make_shared<int>(100);
  auto poly_seed = std::make_shared<unsigned>(0);
  auto poly_out = std::make_shared<std::string>();
  {
    auto* cmd = app.add_subcommand("polyakov-check",
                                   "discrete integration-by-parts identity on random data");
    cmd->configurable();
    cmd->add_option("--grid", *poly_grid, "periodic grid resolution (>= 8)");
    cmd->add_option("--trials", *poly_trials, "number of random pairs");
    cmd->add_option("--seed", *poly_seed, "RNG seed");
    cmd->add_option("--out", *poly_out, "output path (stdout when unset)");
    cmd->callback([=] {
      std::mt19937 rng(*poly_seed);
      std::uniform_real_distribution<double> dist(-1.0, 1.0);
      const int n = *poly_grid;
      const double h = 2 * std::numbers::pi / n;
      double max_residual = 0, sum = 0;
      for (int trial = 0; trial < *poly_trials; ++trial) {
        Eigen::MatrixXd phi(n, n), g(n, n);
        for (int i = 0; i < n; ++i)
          for (int j = 0; j < n; ++j) {
            phi(i, j) = dist(rng);
            g(i, j) = 2.0 + dist(rng);
          }
        const double r = sf::polyakov_identity_check(phi, g, h);
        max_residual = std::max(max_residual, r);
        sum += r;
      }
      sf::json j{{"grid", n},
                 {"trials", *poly_trials},
                 {"seed", *poly_seed},
                 {"max_residual", max_residual},
                 {"mean_residual", sum / *poly_trials}};
      emit({*poly_out, dump_json(j)});
    });
  }

  // ---- thermo ----
  auto thermo_opts = std::make_shared<CommonOpts>();
  auto beta_min = std::make_shared<double>(0.01);
  auto beta_max = std::make_shared<double>(10.0);
  auto beta_points = std::make_shared<int>(200);
  {
    auto* cmd = app.add_subcommand("thermo", "canonical-ensemble profile over a beta grid");
    add_common(cmd, *thermo_opts, 5000.0, true);
    cmd->add_option("--beta-min", *beta_min, "smallest inverse temperature");
    cmd->add_option("--beta-max", *beta_max, "largest inverse temperature");
    cmd->add_option("--beta-points", *beta_points, "log-spaced grid size");
    cmd->callback([=] {
      const auto spectrum = sf::spectrum_of(thermo_opts->spec(), thermo_opts->knobs());
      std::vector<double> grid(*beta_points);
      for (int i = 0; i < *beta_points; ++i)
        grid[i] = *beta_min * std::pow(*beta_max / *beta_min, double(i) / (*beta_points - 1));
      const auto profile = sf::thermo_profile(spectrum, grid);
      Artifact artifact{thermo_opts->out, {}};
      if (thermo_opts->format == "json") {
        artifact.content = dump_json(sf::json(profile));
      } else {
        std::ostringstream os;
        sf::write_thermo_csv(os, profile);
        artifact.content = os.str();
      }
      emit(artifact);
    });
  }

  // ---- holo ----
  auto holo_opts = std::make_shared<CommonOpts>();
  auto holo_lambda0 = std::make_shared<double>(0.0);
  auto holo_rho_max = std::make_shared<double>(2.0);
  auto holo_rho_points = std::make_shared<int>(41);
  auto holo_order = std::make_shared<int>(-1);
  {
    auto* cmd =
        app.add_subcommand("holo", "holographic eigenvalue trajectory from boundary zeta data");
    add_common(cmd, *holo_opts, 50000.0, true);
    cmd->add_option("--lambda0", *holo_lambda0, "initial bulk eigenvalue");
    cmd->add_option("--rho-max", *holo_rho_max, "largest radial coordinate");
    cmd->add_option("--rho-points", *holo_rho_points, "grid size");
    cmd->add_option("--order", *holo_order, "boundary expansion order (default dim + 2)");
    cmd->callback([=] {
      const auto manifold = holo_opts->spec();
      const auto spectrum = sf::spectrum_of(manifold, holo_opts->knobs());
      const int order = *holo_order >= 0 ? *holo_order : manifold.dim() + 2;
      const auto coeffs = coefficients_for(*holo_opts, spectrum, "closed", order, 0.0, 0.2, 24);
      const auto zd = sf::zeta_analytic(spectrum, coeffs, order);
      std::vector<double> grid(*holo_rho_points);
      for (int i = 0; i < *holo_rho_points; ++i)
        grid[i] = *holo_rho_max * double(i) / (*holo_rho_points - 1);
      const auto traj = sf::holographic_flow(zd, *holo_lambda0, grid);
      Artifact artifact{holo_opts->out, {}};
      if (holo_opts->format == "json") {
        artifact.content = dump_json(sf::json(traj));
      } else {
        std::ostringstream os;
        sf::write_holo_csv(os, traj);
        artifact.content = os.str();
      }
      emit(artifact);
    });
  }

  // ---- anomaly ----
  auto anomaly_opts = std::make_shared<CommonOpts>();
  auto a_charge = std::make_shared<double>(1.0);
  auto c_charge = std::make_shared<double>(1.0);
  {
    auto* cmd = app.add_subcommand("anomaly", "integrated trace anomaly (dim 2 or 4)");
    add_common(cmd, *anomaly_opts, 1000.0);
    cmd->add_option("--a-charge", *a_charge, "4d: coefficient of the Euler density");
    cmd->add_option("--c-charge", *c_charge, "4d: coefficient of the Weyl-squared term");
    cmd->callback([=] {
      const auto curv = sf::curvature_invariants(anomaly_opts->spec());
      sf::json j{{"dim", curv.dim}, {"vol", curv.vol}, {"int_R", curv.int_R}};
      if (curv.dim == 2) {
        j["anomaly"] = sf::anomaly_2d(curv);
      } else if (curv.dim == 4) {
        j["anomaly"] = sf::anomaly_4d(curv, *a_charge, *c_charge);
        j["int_E4"] = curv.int_E4;
        j["int_W2"] = curv.int_W2;
        j["a_charge"] = *a_charge;
        j["c_charge"] = *c_charge;
      } else {
        throw sf::UnsupportedManifoldError("anomaly: manifold dimension must be 2 or 4");
      }
      if (curv.euler_char) j["euler_char"] = *curv.euler_char;
      emit({anomaly_opts->out, dump_json(j)});
    });
  }

  // ---- acceptance ----
  auto acceptance_out = std::make_shared<std::string>();
  auto* acceptance_cmd =
      app.add_subcommand("acceptance", "run every acceptance criterion, print pass/fail lines");
  acceptance_cmd->add_option("--out", *acceptance_out, "also write a JSON summary here");
  // Result propagated through an exception-free side channel.
  auto acceptance_failed = std::make_shared<bool>(false);
  acceptance_cmd->callback([=] {
    const auto results = sf::run_acceptance();
    const bool ok = sf::report_acceptance(results, std::cout);
    if (!acceptance_out->empty()) {
      sf::json criteria = sf::json::array();
      for (const auto& r : results)
        criteria.push_back({{"id", r.id}, {"name", r.name}, {"pass", r.pass}, {"detail", r.detail}});
      emit({*acceptance_out, dump_json(sf::json{{"all_pass", ok}, {"criteria", criteria}})});
    }
    *acceptance_failed = !ok;
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;  // --help and friends exit cleanly
  }
  return *acceptance_failed ? 1 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  if (const char* threads = std::getenv("SPECTRALFLOW_THREADS")) {
    const int n = std::atoi(threads);
    if (n > 0) Eigen::setNbThreads(n);
  }
  try {
    return run(argc, argv);
  } catch (const sf::AccuracyError& e) {
    std::cerr << "accuracy error: " << e.what() << "\n";
    return 3;
  } catch (const sf::FitError& e) {
    std::cerr << "fit error: " << e.what() << "\n";
    return 3;
  } catch (const sf::ExtinctionError& e) {
    std::cerr << "extinction: " << e.what() << "\n";
    return 3;
  } catch (const sf::RejectedStepError& e) {
    std::cerr << "rejected step: " << e.what() << "\n";
    return 3;
  } catch (const sf::UnsupportedManifoldError& e) {
    std::cerr << "unsupported manifold: " << e.what() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return 2;
  } catch (const sf::json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
}
