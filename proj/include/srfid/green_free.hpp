#pragma once

#include "srfid/green_tensor.hpp"

namespace srfid {

// Free-space dyadic Green function at separation rho = r_A - r_B (the
// coincidence delta term is dropped), omega > 0, |rho| > 0. Cartesian basis.
GreenTensor g0_full(const Vec3& rho, double omega);

// Isotropic imaginary part sin(k0 rho)/(6 pi rho) * I used by the fidelity
// assembly; exact at coincidence, trace-exact at finite separation. Total on
// rho >= 0, omega >= 0 (series-safe below k0 rho = 1e-4).
GreenTensor g0_im_twopoint(double rho, double omega);

// Coincidence limit omega/(6 pi c) * I.
GreenTensor g0_im_coincident(double omega);

} // namespace srfid
