#pragma once

#include <numbers>

#include "srfid/errors.hpp"

namespace srfid::constants {

// SI defining constants (exact since the 2019 redefinition) plus the
// CODATA 2018 magnetic constant. eps0 is derived from mu0 and c so that
// mu0 * eps0 * c^2 == 1 holds to machine precision; the derived value
// agrees with the CODATA literal within its quoted uncertainty.
inline constexpr double c     = 299792458.0;          // m/s
inline constexpr double h     = 6.62607015e-34;       // J s
inline constexpr double hbar  = h / (2.0 * std::numbers::pi);
inline constexpr double e     = 1.602176634e-19;      // C
inline constexpr double mu0   = 1.25663706212e-6;     // N/A^2
inline constexpr double eps0  = 1.0 / (mu0 * c * c);  // F/m

// 1 debye in C m (1 D = 1e-21/c C m).
inline constexpr double debye = 1.0e-21 / c;

// Photon energy in eV -> angular frequency in rad/s.
inline double ev_to_angular_frequency(double energy_ev) {
    if (energy_ev < 0.0)
        throw DomainError("ev_to_angular_frequency: negative photon energy");
    return energy_ev * e / hbar;
}

// Inverse of the above, for CLI echo and tests.
inline double angular_frequency_to_ev(double omega) {
    if (omega < 0.0)
        throw DomainError("angular_frequency_to_ev: negative angular frequency");
    return omega * hbar / e;
}

} // namespace srfid::constants
