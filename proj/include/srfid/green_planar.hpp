#pragma once

#include "srfid/green_tensor.hpp"

namespace srfid {

struct FresnelPair {
    complexd rs, rp;
};

// Reflection coefficients at a planar interface between half-spaces with
// permittivities eps1 (source side) and eps2, at in-plane wavenumber k_par.
// Perpendicular wavenumbers k_perp = sqrt(eps w^2/c^2 - k_par^2) are taken on
// the branch Im k_perp >= 0 (decaying into the evanescent region).
FresnelPair fresnel_coefficients(double k_par, double omega, complexd eps1, complexd eps2);

// Non-retarded scattering Green function of a half-space, both points on the
// vacuum side at height z > 0 above the interface. Coincidence tensor
// c^2/(32 pi w^2 z^3) * rp * diag(1, 1, 2), cartesian, z normal to the plane.
GreenTensor g1_planar_coincident_nonret(double z, double omega, complexd eps);

// zz component at equal heights z and transverse separation x >= 0:
//   -rp/(4 pi k0^2 z^3) * ((x/z)^2 - 8) / ((x/z)^2 + 4)^{5/2}
complexd g1_planar_zz_twopoint_nonret(double x, double z, double omega, complexd eps);

// Same quantity from the k-space representation
//   (rp c^2 / (4 pi w^2)) * int_0^{40/z} dk e^{-2 k z} k^2 J0(k x),
// adaptive Gauss-Kronrod. Dual route used to validate the closed form.
complexd g1_planar_zz_twopoint_quadrature(double x, double z, double omega, complexd eps,
                                          double rel_tol = 1e-10);

} // namespace srfid
