// JSON serialization of the public data types (double instantiations).
#ifndef SPECTRALFLOW_IO_JSON_IO_HPP
#define SPECTRALFLOW_IO_JSON_IO_HPP

#include <json.hpp>
#include <memory>

#include "spectralflow/flow/rg_step.hpp"
#include "spectralflow/heat/coefficients.hpp"
#include "spectralflow/io/csv.hpp"
#include "spectralflow/manifolds/manifold_spec.hpp"
#include "spectralflow/thermo/holographic.hpp"
#include "spectralflow/thermo/thermo.hpp"
#include "spectralflow/zeta/zeta.hpp"

namespace spectralflow {

using json = nlohmann::json;

inline json basis_to_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(row);
  }
  return rows;
}

inline Eigen::MatrixXd basis_from_json(const json& rows) {
  if (!rows.is_array() || rows.empty())
    throw std::invalid_argument("manifold json: expected array of matrix rows");
  const Eigen::Index nr = static_cast<Eigen::Index>(rows.size());
  const Eigen::Index nc = static_cast<Eigen::Index>(rows.front().size());
  Eigen::MatrixXd m(nr, nc);
  for (Eigen::Index i = 0; i < nr; ++i) {
    if (static_cast<Eigen::Index>(rows[i].size()) != nc)
      throw std::invalid_argument("manifold json: ragged matrix rows");
    for (Eigen::Index j = 0; j < nc; ++j) m(i, j) = rows[i][j].get<double>();
  }
  return m;
}

inline void to_json(json& j, const ManifoldSpec<double>& spec);

inline void manifold_kind_to_json(json& j, const FlatTorus<double>& t) {
  j = json{{"kind", "flat_torus"}, {"basis", basis_to_json(t.basis)}};
}
inline void manifold_kind_to_json(json& j, const RoundSphere<double>& s) {
  j = json{{"kind", "round_sphere"}, {"dim", s.n}, {"radius", s.radius}};
}
inline void manifold_kind_to_json(json& j, const ProductSpec<double>& p) {
  json a, b;
  to_json(a, *p.a);
  to_json(b, *p.b);
  j = json{{"kind", "product"}, {"a", a}, {"b", b}};
}
inline void manifold_kind_to_json(json& j, const ConformalTorus<double>& c) {
  j = json{{"kind", "conformal_torus"},
           {"basis", basis_to_json(c.basis)},
           {"u", basis_to_json(c.u)}};
}

inline void to_json(json& j, const ManifoldSpec<double>& spec) {
  std::visit([&j](const auto& k) { manifold_kind_to_json(j, k); }, spec.kind);
}

inline void from_json(const json& j, ManifoldSpec<double>& spec) {
  const std::string kind = j.at("kind").get<std::string>();
  if (kind == "flat_torus") {
    FlatTorus<double> t{basis_from_json(j.at("basis"))};
    t.validate();
    spec.kind = std::move(t);
  } else if (kind == "round_sphere") {
    RoundSphere<double> s{j.at("dim").get<int>(), j.at("radius").get<double>()};
    s.validate();
    spec.kind = s;
  } else if (kind == "product") {
    auto a = std::make_shared<ManifoldSpec<double>>();
    auto b = std::make_shared<ManifoldSpec<double>>();
    from_json(j.at("a"), *a);
    from_json(j.at("b"), *b);
    spec.kind = ProductSpec<double>{std::move(a), std::move(b)};
  } else if (kind == "conformal_torus") {
    ConformalTorus<double> c;
    const Eigen::MatrixXd basis = basis_from_json(j.at("basis"));
    if (basis.rows() != 2 || basis.cols() != 2)
      throw std::invalid_argument("conformal_torus json: basis must be 2x2");
    c.basis = basis;
    c.u = basis_from_json(j.at("u"));
    c.validate();
    spec.kind = std::move(c);
  } else {
    throw std::invalid_argument("manifold json: unknown kind '" + kind + "'");
  }
}

inline void to_json(json& j, const Spectrum<double>& s) {
  json entries = json::array();
  for (const auto& e : s.entries) entries.push_back({e.eigenvalue, e.multiplicity});
  j = json{{"dim", s.dim},
           {"entries", entries},
           {"zero_modes", s.zero_modes},
           {"source", s.source == SpectrumSource::exact ? "exact" : "discretized"},
           {"cutoff", s.cutoff}};
}

inline void to_json(json& j, const HeatCoefficients<double>& c) {
  json coeffs = json::object();
  for (int k = 0; k <= c.order(); ++k) coeffs[std::to_string(k)] = c.at(k);
  j = json{{"dim", c.dim}, {"coeffs", coeffs}, {"absorbs_4pi_power", c.absorbs_4pi_power}};
  if (c.fit) {
    j["residual"] = c.fit->weighted_rms;
    j["max_abs_residual"] = c.fit->max_abs_residual;
    j["condition"] = c.fit->condition;
    j["t_grid"] = c.fit->t_grid;
  }
}

inline void to_json(json& j, const ZetaData<double>& z) {
  json residues = json::object();
  for (const auto& [s, r] : z.residues) residues[format_real(s)] = r;
  j = json{{"dim", z.dim},
           {"zeta0", z.zeta0},
           {"zeta0_prime", z.zeta0_prime},
           {"residues", residues},
           {"zero_modes_subtracted", z.zero_modes_subtracted},
           {"expansion_order", z.expansion_order},
           {"error_estimate", z.error_estimate}};
}

inline void to_json(json& j, const RGStepReport<double>& r) {
  j = json{{"scale", r.scale},
           {"scale_prime", r.scale_prime},
           {"tau", r.tau},
           {"raw_integral", r.raw_integral},
           {"divergent_part", r.divergent_part},
           {"log_part", r.log_part},
           {"convergent_part", r.convergent_part},
           {"a_n_used", r.a_n_used},
           {"renormalized_shift", r.renormalized_shift},
           {"slope_t_raw", r.slope_t_raw},
           {"closure_residual", r.closure_residual},
           {"truncation_bound", r.truncation_bound},
           {"quadrature_error", r.quadrature_error}};
}

inline void to_json(json& j, const ThermoProfile<double>& p) {
  j = json{{"beta", p.beta},         {"log_z", p.log_z},
           {"free_energy", p.free_energy}, {"energy_avg", p.energy_avg},
           {"entropy", p.entropy},   {"fluctuation", p.fluctuation},
           {"tail_bound", p.tail_bound}};
}

inline void to_json(json& j, const HoloTrajectory<double>& t) {
  j = json{{"rho", t.rho},
           {"lambda", t.lambda},
           {"df_drho", t.df_drho},
           {"zeta0", t.zeta0},
           {"zeta0_prime", t.zeta0_prime},
           {"lambda0", t.lambda0},
           {"odd_boundary_warning", t.odd_boundary_warning}};
}

inline void to_json(json& j, const LogDetFlowReport<double>& r) {
  j = json{{"scale", r.scale},
           {"scale_prime", r.scale_prime},
           {"delta_log_det", r.delta_log_det},
           {"expected", r.expected},
           {"flow_log_part", r.flow_log_part},
           {"zeta0", r.zeta0},
           {"a_n", r.a_n},
           {"zero_modes", r.zero_modes}};
}

}  // namespace spectralflow

#endif
