#include "srfid/green_planar.hpp"

#include <cmath>

#include "srfid/constants.hpp"
#include "srfid/dielectric.hpp"
#include "srfid/quadrature.hpp"

namespace srfid {

namespace {

// sqrt on the physical branch: decaying (Im >= 0) or outgoing (Re >= 0).
complexd k_perp(complexd eps, double k0, double k_par) {
    complexd w = std::sqrt(eps * k0 * k0 - k_par * k_par);
    if (w.imag() < 0.0 || (w.imag() == 0.0 && w.real() < 0.0)) w = -w;
    return w;
}

void check_geometry(double x, double z, double omega, const char* who) {
    if (!(z > 0.0)) throw DomainError(std::string(who) + ": height z must be > 0");
    if (x < 0.0) throw DomainError(std::string(who) + ": transverse separation must be >= 0");
    if (!(omega > 0.0)) throw DomainError(std::string(who) + ": omega must be > 0");
}

} // namespace

FresnelPair fresnel_coefficients(double k_par, double omega, complexd eps1, complexd eps2) {
    if (k_par < 0.0) throw DomainError("fresnel_coefficients: k_par must be >= 0");
    if (omega < 0.0) throw DomainError("fresnel_coefficients: omega must be >= 0");
    if (k_par == 0.0 && omega == 0.0)
        throw DomainError("fresnel_coefficients: k_par and omega cannot both vanish");
    const double k0 = omega / constants::c;
    const complexd k1 = k_perp(eps1, k0, k_par);
    const complexd k2 = k_perp(eps2, k0, k_par);
    FresnelPair f;
    f.rs = (k1 - k2) / (k1 + k2);
    f.rp = (eps2 * k1 - eps1 * k2) / (eps2 * k1 + eps1 * k2);
    return f;
}

GreenTensor g1_planar_coincident_nonret(double z, double omega, complexd eps) {
    check_geometry(0.0, z, omega, "g1_planar_coincident_nonret");
    const complexd rp = fresnel_rp_nonret(eps);
    const double k0 = omega / constants::c;
    const complexd s = rp / (32.0 * std::numbers::pi * k0 * k0 * z * z * z);
    return GreenTensor::diagonal(s, s, 2.0 * s);
}

complexd g1_planar_zz_twopoint_nonret(double x, double z, double omega, complexd eps) {
    check_geometry(x, z, omega, "g1_planar_zz_twopoint_nonret");
    const complexd rp = fresnel_rp_nonret(eps);
    const double k0 = omega / constants::c;
    const double u = x / z;
    const double shape = (u * u - 8.0) / std::pow(u * u + 4.0, 2.5);
    return -rp * shape / (4.0 * std::numbers::pi * k0 * k0 * z * z * z);
}

complexd g1_planar_zz_twopoint_quadrature(double x, double z, double omega, complexd eps,
                                          double rel_tol) {
    check_geometry(x, z, omega, "g1_planar_zz_twopoint_quadrature");
    const complexd rp = fresnel_rp_nonret(eps);
    const double k0 = omega / constants::c;
    // Integrate in t = k z so the quadrature sees an O(1) domain with the
    // peak at t = 1; e^{-80} makes the truncation at t = 40 negligible.
    const double u = x / z;
    const auto kernel = [u](double t) {
        return std::exp(-2.0 * t) * t * t * std::cyl_bessel_j(0.0, t * u);
    };
    const auto q = quad::integrate(kernel, 0.0, 40.0, rel_tol);
    return rp * q.value / (4.0 * std::numbers::pi * k0 * k0 * z * z * z);
}

} // namespace srfid
