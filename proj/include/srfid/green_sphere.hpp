#pragma once

#include <cmath>

#include "srfid/green_tensor.hpp"

namespace srfid {

// Truncation policy for the multipole sums. The stop rule is adaptive:
// summation ends once |term|/|partial sum| < tol for 3 consecutive orders
// (3 in a row guards against accidental zeros of P_l). l_max_cap limits the
// retarded series, whose special functions are only supported to l = 200.
// The non-retarded sums involve no special functions and converge only near
// l ~ r/(r-R), which for nearly-planar geometries far exceeds 200; they use
// the same stop rule with an internal budget max(l_max_cap, ~48 r/(r-R)).
struct MieSeriesControl {
    double tol = 1e-10;
    int l_max_cap = 200;
};

void validate(const MieSeriesControl& ctl);

// Diagnostics of an adaptive series evaluation.
struct SeriesReport {
    int l_used = 0;
    double tail_rel = 0.0;  // bound on |remainder| / |sum|
};

// Two emitters at equal radius r = R + z outside a sphere of radius R,
// separated by polar angle theta_sep as seen from the centre.
struct SphereGeometry {
    double radius;     // R, m, > 0
    double height;     // z, m, > 0 (binding height above the surface)
    double theta_sep;  // rad, in [0, pi]

    double r() const { return radius + height; }
    double arc() const { return theta_sep * r(); }
    double chord() const { return 2.0 * r() * std::sin(0.5 * theta_sep); }

    static SphereGeometry from_arc(double radius, double height, double arc);
};

void validate(const SphereGeometry& g);

// Mie reflection coefficients of the sphere for s- and p-polarised spherical
// waves, order l >= 1, with interior wavenumber k = k0 sqrt(eps),
// Im sqrt(eps) >= 0.
complexd mie_rs(int l, double omega, double radius, complexd eps);
complexd mie_rp(int l, double omega, double radius, complexd eps);

// Non-retarded limit i (l+1)/((2l+1)!!(2l-1)!!) * (eps-1)/(l eps + l + 1) *
// (k0 R)^{2l+1}. The denominator vanishes at eps = -(l+1)/l (multipole
// surface mode); evaluation within 1e-6 of a pole is rejected.
complexd mie_rp_nonret(int l, double omega, double radius, complexd eps);

// Scattering Green function at coincidence, both points at radius r > R,
// spherical basis (e_r, e_theta, e_phi), diagonal with theta = phi entries:
//   (i k0 / 8 pi) sum_l (2l+1) [ rs h_l(k0 r)^2 (tt+pp)
//     + rp ( 2 l(l+1)/(k0 r)^2 h_l(k0 r)^2 rr + zeta_l(k0 r)^2 (tt+pp) ) ]
GreenTensor g_sphere_coincident(double r, double omega, double radius, complexd eps,
                                const MieSeriesControl& ctl = {}, SeriesReport* rep = nullptr);

// Non-retarded coincidence tensor
//   c^2/(8 pi w^2 r^3) sum_l l(l+1) (eps-1)/(l eps+l+1) (R/r)^{2l+1}
//     * [ 2(l+1) rr + l (tt+pp) ]
GreenTensor g_sphere_coincident_nonret(double r, double omega, double radius, complexd eps,
                                       const MieSeriesControl& ctl = {},
                                       SeriesReport* rep = nullptr);

// rr component between the two emitter positions (equal radii), non-retarded:
//   1/(4 pi k0^2 r^3) sum_l l(l+1)^2 (eps-1)/(l eps+l+1) (R/r)^{2l+1} P_l(cos theta)
complexd g_sphere_rr_twopoint_nonret(const SphereGeometry& g, double omega, complexd eps,
                                     const MieSeriesControl& ctl = {},
                                     SeriesReport* rep = nullptr);

// Retarded counterpart,
//   i/(4 pi k0 r^2) sum_l (2l+1) l(l+1) rp_l [h_l(k0 r)]^2 P_l(cos theta),
// which collapses onto the rr entry of g_sphere_coincident at theta = 0 and
// onto the non-retarded series for k0 r -> 0.
complexd g_sphere_rr_twopoint_retarded(const SphereGeometry& g, double omega, complexd eps,
                                       const MieSeriesControl& ctl = {},
                                       SeriesReport* rep = nullptr);

} // namespace srfid
