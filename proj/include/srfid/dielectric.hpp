#pragma once

#include <complex>
#include <istream>
#include <string>
#include <variant>
#include <vector>

#include "srfid/errors.hpp"

namespace srfid {

using complexd = std::complex<double>;

// Tabulated complex permittivity on a strictly increasing photon-energy grid,
// with optional precomputed imaginary-axis samples eps(i xi). Immutable after
// load; all queries are read-only and concurrent-safe.
struct DielectricTable {
    std::vector<double> energy_ev;
    std::vector<complexd> eps;
    std::vector<double> xi;       // rad/s, strictly increasing (optional)
    std::vector<double> eps_xi;   // real, >= 1, decreasing (optional)
    std::string id;               // origin label, echoed into CSV headers

    double omega_min() const;     // rad/s bounds of the covered grid
    double omega_max() const;
};

struct LorentzOscillator {
    double f;       // strength, rad^2/s^2, >= 0
    double omega0;  // resonance, rad/s, > 0
    double gamma;   // damping, rad/s, > 0
};

// eps(omega) = eps_inf + sum_j f_j / (omega0_j^2 - omega^2 - i gamma_j omega)
struct LorentzModel {
    double eps_inf = 1.0;
    std::vector<LorentzOscillator> oscillators;
    std::string id = "lorentz";
};

using Medium = std::variant<DielectricTable, LorentzModel>;

// CSV rows `energy_eV,eps_re,eps_im`; '#'-prefixed comment lines; no header
// row. Rejects non-monotonic grids and negative Im eps, reporting the
// offending 1-based line.
DielectricTable load_dielectric_table(std::istream& in, std::string id = "table");
DielectricTable load_dielectric_table_file(const std::string& path);

// Optional companion stream of rows `xi_rad_s,eps` for the imaginary axis.
void load_imag_axis_samples(std::istream& in, DielectricTable& table);
void load_imag_axis_samples_file(const std::string& path, DielectricTable& table);

void validate(const LorentzModel& model);

// Permittivity at real angular frequency omega >= 0. Tables interpolate
// componentwise linearly in photon energy and never extrapolate.
complexd permittivity(const DielectricTable& t, double omega);
complexd permittivity(const LorentzModel& m, double omega);
complexd permittivity(const Medium& med, double omega);

// Permittivity on the imaginary frequency axis, eps(i xi), xi >= 0. Tables
// use stored samples when present, otherwise the Kramers-Kronig transform
// eps(i xi) = 1 + (2/pi) int dw' w' Im eps(w') / (w'^2 + xi^2), evaluated by
// trapezoid on the table grid.
double permittivity_imag_axis(const DielectricTable& t, double xi);
double permittivity_imag_axis(const LorentzModel& m, double xi);
double permittivity_imag_axis(const Medium& med, double xi);

std::string medium_id(const Medium& med);

// Non-retarded (large k_par) Fresnel surface response (eps-1)/(eps+1);
// eps = -1 is the surface-mode pole.
complexd fresnel_rp_nonret(complexd eps);

} // namespace srfid
