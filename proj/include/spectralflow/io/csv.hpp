// CSV artifact writers. Floats are printed with %.17g ('.' decimal, no
// locale), so identical inputs produce byte-identical files.
#ifndef SPECTRALFLOW_IO_CSV_HPP
#define SPECTRALFLOW_IO_CSV_HPP

#include <cstdio>
#include <ostream>
#include <string>

#include "spectralflow/core/spectrum.hpp"
#include "spectralflow/thermo/holographic.hpp"
#include "spectralflow/thermo/thermo.hpp"
#include "spectralflow/zeta/zeta.hpp"

namespace spectralflow {

inline std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

/// One "eigenvalue,multiplicity" row per entry, no header.
inline void write_spectrum_csv(std::ostream& os, const Spectrum<double>& spec) {
  for (const auto& e : spec.entries)
    os << format_real(e.eigenvalue) << ',' << e.multiplicity << '\n';
}

inline void write_thermo_csv(std::ostream& os, const ThermoProfile<double>& profile) {
  os << "beta,log_z,free_energy,energy_avg,entropy,fluctuation\n";
  for (std::size_t i = 0; i < profile.beta.size(); ++i)
    os << format_real(profile.beta[i]) << ',' << format_real(profile.log_z[i]) << ','
       << format_real(profile.free_energy[i]) << ',' << format_real(profile.energy_avg[i]) << ','
       << format_real(profile.entropy[i]) << ',' << format_real(profile.fluctuation[i]) << '\n';
}

/// Single-row form for batch runs; residues stay in the JSON form.
inline void write_zeta_csv(std::ostream& os, const ZetaData<double>& zd) {
  os << "dim,zeta0,zeta0_prime,zero_modes_subtracted,expansion_order,error_estimate\n";
  os << zd.dim << ',' << format_real(zd.zeta0) << ',' << format_real(zd.zeta0_prime) << ','
     << zd.zero_modes_subtracted << ',' << zd.expansion_order << ','
     << format_real(zd.error_estimate) << '\n';
}

inline void write_holo_csv(std::ostream& os, const HoloTrajectory<double>& traj) {
  os << "rho,lambda,df_drho\n";
  for (std::size_t i = 0; i < traj.rho.size(); ++i)
    os << format_real(traj.rho[i]) << ',' << format_real(traj.lambda[i]) << ','
       << format_real(traj.df_drho[i]) << '\n';
}

}  // namespace spectralflow

#endif
