#include "srfid/green_free.hpp"

#include <cmath>

#include "srfid/constants.hpp"
#include "srfid/special_functions.hpp"

namespace srfid {

GreenTensor g0_full(const Vec3& rho_vec, double omega) {
    if (!(omega > 0.0)) throw DomainError("g0_full: omega must be > 0");
    const double rho = norm(rho_vec);
    if (!(rho > 0.0)) throw DomainError("g0_full: zero separation (delta term excluded)");

    const double k0 = omega / constants::c;
    const double kr = k0 * rho;
    const complexd phase = std::polar(1.0, kr);
    const complexd pref = -phase / (4.0 * std::numbers::pi * k0 * k0 * rho * rho * rho);
    const complexd a = complexd(1.0 - kr * kr, -kr);       // 1 - i kr - (kr)^2
    const complexd b = complexd(3.0 - kr * kr, -3.0 * kr); // 3 - 3 i kr - (kr)^2

    GreenTensor g;
    for (int i = 0; i < 3; ++i) {
        const double ui = rho_vec[static_cast<size_t>(i)] / rho;
        for (int j = 0; j < 3; ++j) {
            const double uj = rho_vec[static_cast<size_t>(j)] / rho;
            // b * (ui * uj) keeps the dyad bitwise symmetric.
            g(i, j) = pref * (((i == j) ? a : complexd(0.0)) - b * (ui * uj));
        }
    }
    return g;
}

GreenTensor g0_im_twopoint(double rho, double omega) {
    if (rho < 0.0) throw DomainError("g0_im_twopoint: rho must be >= 0");
    if (omega < 0.0) throw DomainError("g0_im_twopoint: omega must be >= 0");
    const double k0 = omega / constants::c;
    const double v = k0 / (6.0 * std::numbers::pi) * specfun::sinc(k0 * rho);
    return GreenTensor::isotropic(v);
}

GreenTensor g0_im_coincident(double omega) {
    if (omega < 0.0) throw DomainError("g0_im_coincident: omega must be >= 0");
    return GreenTensor::isotropic(omega / (6.0 * std::numbers::pi * constants::c));
}

} // namespace srfid
