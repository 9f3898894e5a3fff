#pragma once

#include <functional>

#include "srfid/errors.hpp"
#include "srfid/green_tensor.hpp"

namespace srfid {

// Point emitter with a single active transition. Dipole components are
// expressed in whatever basis the Green tensors handed to the rate and shift
// operations use (Cartesian for planar setups, spherical-at-point for
// sphere setups with e_r along local z).
struct Emitter {
    double omega_t = 0.0;            // transition angular frequency (rad/s)
    Vec3 dipole{0.0, 0.0, 0.0};      // transition dipole moment (C m)
    Vec3 position{0.0, 0.0, 0.0};    // location descriptor (m), geometry-specific
};

// omega_t > 0 and |dipole| > 0, else DomainError.
void validate(const Emitter& em);

// Decay-rate split: total() = gamma_free + gamma_env.
struct RateResult {
    double gamma_free = 0.0;  // free-space Einstein rate (1/s)
    double gamma_env = 0.0;   // environment-induced change (1/s), may be negative
    double total() const noexcept { return gamma_free + gamma_env; }
};

// Gamma = (2 mu0 / hbar) omega_t^2 d . imG . d for a coincidence mode density
// imG (the imaginary part of the total Green tensor at the emitter position;
// entries must be real). A contraction negative beyond rounding noise means
// the input is not a passive coincidence density: InconsistencyError.
double transition_rate(const Emitter& em, const GreenTensor& imG);

// Closed-form free-space rate omega_t^3 |d|^2 / (3 pi eps0 hbar c^3).
double einstein_a_rate(const Emitter& em);

// gamma_free from the closed form, gamma_env contracted from the scattering
// part of the mode density (which alone may be negative); a negative total
// raises InconsistencyError.
RateResult purcell_rates(const Emitter& em, const GreenTensor& imG_scattering);

// Integration window for the shift quadrature, taken as the support of the
// dipole-contracted mode density. Requires 0 <= omega_min < omega_max,
// both finite, else RangeError.
struct FrequencyGrid {
    double omega_min = 0.0;
    double omega_max = 0.0;
};

void validate(const FrequencyGrid& grid);

// -(mu0 / pi hbar) PV int domega omega^2 w(omega) / (omega + omega_kn) over
// the grid window, with w(omega) = d . ImG(omega) . d supplied contracted.
// omega_kn > 0 keeps the pole off the positive axis (downward transition);
// omega_kn < 0 with the pole inside the window engages a symmetric
// principal-value split. A pole within 1e-12 of a window edge: RangeError.
double pv_shift_integral(const std::function<double(double)>& weighted, double omega_kn,
                         const FrequencyGrid& grid);

// Two-level downward shift: pole-free path with omega_kn = em.omega_t.
double frequency_shift(const Emitter& em,
                       const std::function<GreenTensor(double)>& imG_of_omega,
                       const FrequencyGrid& grid);

// Signed-denominator variant covering upward terms (omega_kn < 0).
double frequency_shift(const Emitter& em,
                       const std::function<GreenTensor(double)>& imG_of_omega,
                       const FrequencyGrid& grid, double omega_kn);

// Azimuthal averages of the dipole orientation, z along the surface normal /
// local radial direction. The returned quadratic weights multiply the scalar
// channel mode densities in rate formulas.
double rot_avg_planar_coincident(const Vec3& d);  // d_x^2 + d_y^2 + 2 d_z^2
double rot_avg_planar_cross(const Vec3& d);       // d_z^2

// A_phi (d_x^2 + d_y^2) + A_r d_z^2; the cross-term form A_rr' d_z^2 is
// recovered with (a_r, a_phi) = (A_rr', 0).
double rot_avg_sphere(double a_r, double a_phi, const Vec3& d);

} // namespace srfid
