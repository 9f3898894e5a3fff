#include "srfid/emitters.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "srfid/constants.hpp"
#include "srfid/quadrature.hpp"

namespace srfid {

namespace {

constexpr double pi = std::numbers::pi;

// Largest entry magnitudes, used to scale the real-entry and passivity checks.
struct EntryScales {
    double max_re = 0.0;
    double max_im = 0.0;
};

EntryScales scales(const GreenTensor& g) {
    EntryScales s;
    for (const auto& e : g.entry) {
        s.max_re = std::max(s.max_re, std::abs(e.real()));
        s.max_im = std::max(s.max_im, std::abs(e.imag()));
    }
    return s;
}

// d . G . d for an imaginary-part tensor; rejects tensors whose entries carry
// a residual imaginary component (they are not an Im G).
double real_contraction(const Vec3& d, const GreenTensor& g, const char* who) {
    const EntryScales s = scales(g);
    if (s.max_im > 1e-12 * std::max(s.max_re, 1e-300))
        throw DomainError(std::string(who) +
                          ": mode-density tensor must have real entries (pass Im G)");
    return contract(d, g).real();
}

} // namespace

void validate(const Emitter& em) {
    if (!(em.omega_t > 0.0)) throw DomainError("Emitter: omega_t must be > 0");
    if (!(norm(em.dipole) > 0.0)) throw DomainError("Emitter: dipole must be nonzero");
}

double transition_rate(const Emitter& em, const GreenTensor& imG) {
    validate(em);
    const double quad = real_contraction(em.dipole, imG, "transition_rate");
    const double d2 = dot(em.dipole, em.dipole);
    const double scale = d2 * scales(imG).max_re;
    if (quad < -1e-12 * scale)
        throw InconsistencyError(
            "transition_rate: negative rate from a claimed passive coincidence density");
    return 2.0 * constants::mu0 / constants::hbar * em.omega_t * em.omega_t * quad;
}

double einstein_a_rate(const Emitter& em) {
    validate(em);
    const double w = em.omega_t;
    const double d2 = dot(em.dipole, em.dipole);
    return w * w * w * d2 /
           (3.0 * pi * constants::eps0 * constants::hbar * constants::c * constants::c *
            constants::c);
}

RateResult purcell_rates(const Emitter& em, const GreenTensor& imG_scattering) {
    validate(em);
    const double quad = real_contraction(em.dipole, imG_scattering, "purcell_rates");
    RateResult r;
    r.gamma_free = einstein_a_rate(em);
    r.gamma_env = 2.0 * constants::mu0 / constants::hbar * em.omega_t * em.omega_t * quad;
    if (r.total() < -1e-12 * (r.gamma_free + std::abs(r.gamma_env)))
        throw InconsistencyError(
            "purcell_rates: total rate negative; scattering density inconsistent with a "
            "passive environment");
    return r;
}

void validate(const FrequencyGrid& grid) {
    if (!std::isfinite(grid.omega_min) || !std::isfinite(grid.omega_max) ||
        grid.omega_min < 0.0 || !(grid.omega_max > grid.omega_min))
        throw RangeError("FrequencyGrid: need finite 0 <= omega_min < omega_max");
}

double pv_shift_integral(const std::function<double(double)>& weighted, double omega_kn,
                         const FrequencyGrid& grid) {
    validate(grid);
    if (!weighted) throw DomainError("pv_shift_integral: empty integrand");

    const double lo = grid.omega_min;
    const double hi = grid.omega_max;
    const double p = -omega_kn;  // pole position on the omega axis
    const double pref = -constants::mu0 / (pi * constants::hbar);

    auto g = [&](double w) { return w * w * weighted(w); };
    auto plain = [&](double a, double b) {
        if (!(b > a)) return 0.0;
        return quad::integrate([&](double w) { return g(w) / (w - p); }, a, b, 1e-10).value;
    };

    const double span = hi - lo;
    if (std::abs(p - lo) < 1e-12 * span || std::abs(p - hi) < 1e-12 * span)
        throw RangeError("pv_shift_integral: pole sits on the grid boundary");

    if (p < lo || p > hi) return pref * plain(lo, hi);

    // Interior pole: symmetric window [p-h, p+h] where the principal value
    // reduces to the finite odd-difference integral; plain quadrature outside.
    const double h = std::min(p - lo, hi - p);
    const double singular =
        quad::integrate([&](double s) { return (g(p + s) - g(p - s)) / s; }, 0.0, h, 1e-10)
            .value;
    return pref * (plain(lo, p - h) + plain(p + h, hi) + singular);
}

double frequency_shift(const Emitter& em,
                       const std::function<GreenTensor(double)>& imG_of_omega,
                       const FrequencyGrid& grid, double omega_kn) {
    validate(em);
    if (!imG_of_omega) throw DomainError("frequency_shift: empty mode-density callable");
    auto w = [&](double omega) {
        return real_contraction(em.dipole, imG_of_omega(omega), "frequency_shift");
    };
    return pv_shift_integral(w, omega_kn, grid);
}

double frequency_shift(const Emitter& em,
                       const std::function<GreenTensor(double)>& imG_of_omega,
                       const FrequencyGrid& grid) {
    validate(em);
    return frequency_shift(em, imG_of_omega, grid, em.omega_t);
}

double rot_avg_planar_coincident(const Vec3& d) {
    return d[0] * d[0] + d[1] * d[1] + 2.0 * d[2] * d[2];
}

double rot_avg_planar_cross(const Vec3& d) { return d[2] * d[2]; }

double rot_avg_sphere(double a_r, double a_phi, const Vec3& d) {
    return a_phi * (d[0] * d[0] + d[1] * d[1]) + a_r * d[2] * d[2];
}

} // namespace srfid
