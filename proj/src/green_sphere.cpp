#include "srfid/green_sphere.hpp"

#include <algorithm>
#include <string>

#include "srfid/constants.hpp"
#include "srfid/special_functions.hpp"

namespace srfid {

using specfun::ScaledComplex;

namespace {

constexpr double pi = std::numbers::pi;

void check_sphere_args(double r, double omega, double radius, const char* who) {
    if (!(radius > 0.0)) throw DomainError(std::string(who) + ": radius must be > 0");
    if (!(r > radius)) throw DomainError(std::string(who) + ": field point must lie outside, r > R");
    if (!(omega > 0.0)) throw DomainError(std::string(who) + ": omega must be > 0");
}

void check_mie_envelope(double k0, double r, double radius, complexd k, const char* who) {
    if (k0 * r > specfun::max_bessel_arg || std::abs(k) * radius > specfun::max_bessel_arg)
        throw OverflowError(std::string(who) + ": size parameter outside special-function envelope");
    (void)k0;
}

complexd interior_wavenumber(double k0, complexd eps) {
    complexd n = std::sqrt(eps);
    if (n.imag() < 0.0) n = -n;  // decaying into an absorbing sphere
    return k0 * n;
}

// Tracks the 3-consecutive-small-terms stop rule plus a geometric tail bound.
// Term magnitudes are fed without their |P_l| <= 1 angular factor so the
// bound majorises the true remainder.
class SeriesTracker {
public:
    SeriesTracker(double tol, double asymptotic_ratio)
        : tol_(tol), rho_floor_(asymptotic_ratio) {}

    bool step(double term_mag, double sum_mag) {
        if (prev_mag_ > 0.0) ratio_ = std::max(term_mag / prev_mag_, ratio_ * 0.5);
        prev_mag_ = term_mag;
        last_mag_ = term_mag;
        const double rel = sum_mag > 0.0 ? term_mag / sum_mag : (term_mag > 0.0 ? 1.0 : 0.0);
        streak_ = (rel < tol_) ? streak_ + 1 : 0;
        return streak_ >= 3;
    }

    double tail_rel(double sum_mag) const {
        if (last_mag_ == 0.0) return 0.0;
        const double rho = std::max(ratio_, rho_floor_);
        if (rho >= 1.0 || sum_mag == 0.0) return std::numeric_limits<double>::infinity();
        return last_mag_ * rho / (1.0 - rho) / sum_mag;
    }

private:
    double tol_;
    double rho_floor_;
    double prev_mag_ = 0.0;
    double last_mag_ = 0.0;
    double ratio_ = 0.0;
    int streak_ = 0;
};

[[noreturn]] void throw_not_converged(const char* who, int l, double tail_rel) {
    throw ConvergenceError(std::string(who) + ": multipole series not converged by l = " +
                               std::to_string(l) + " (relative tail estimate " +
                               std::to_string(tail_rel) + ")",
                           tail_rel);
}

void near_pole_guard(int l, complexd eps, const char* who) {
    const double pole = -(l + 1.0) / static_cast<double>(l);
    if (std::abs(eps - pole) < 1e-6)
        throw PoleError(std::string(who) + ": eps within 1e-6 of the l = " + std::to_string(l) +
                        " multipole surface mode at eps = -(l+1)/l");
}

long nonret_budget(const MieSeriesControl& ctl, double r, double radius) {
    const double needed = 48.0 * r / (r - radius);
    return std::max<long>(ctl.l_max_cap,
                          static_cast<long>(std::min(6.0e6, std::ceil(needed))));
}

// Everything the retarded sums need at one (omega, R, eps, r) configuration.
struct MieWorkspace {
    std::vector<ScaledComplex> j_x0, h_x0, eta_x0, zeta_x0;  // at k0 R
    std::vector<ScaledComplex> j_zc, eta_zc;                 // at k R
    complexd k0c, kc;

    static MieWorkspace build(int lmax, double omega, double radius, complexd eps) {
        const double k0 = omega / constants::c;
        const complexd k = interior_wavenumber(k0, eps);
        MieWorkspace w;
        w.k0c = k0;
        w.kc = k;
        const complexd x0(k0 * radius, 0.0);
        const complexd zc = k * radius;
        w.j_x0 = specfun::sph_bessel_j_scaled(lmax, x0);
        w.h_x0 = specfun::sph_hankel1_scaled(lmax, x0);
        w.eta_x0 = specfun::riccati_eta_scaled(lmax, x0);
        w.zeta_x0 = specfun::riccati_zeta_scaled(lmax, x0);
        w.j_zc = specfun::sph_bessel_j_scaled(lmax, zc);
        w.eta_zc = specfun::riccati_eta_scaled(lmax, zc);
        return w;
    }

    ScaledComplex rs(int l) const {
        const auto lu = static_cast<size_t>(l);
        const ScaledComplex num = j_zc[lu] * eta_x0[lu] * k0c - j_x0[lu] * eta_zc[lu] * kc;
        const ScaledComplex den = j_zc[lu] * zeta_x0[lu] * k0c - h_x0[lu] * eta_zc[lu] * kc;
        return (num * complexd(-1.0)) / den;
    }

    ScaledComplex rp(int l) const {
        const auto lu = static_cast<size_t>(l);
        const ScaledComplex num = j_zc[lu] * eta_x0[lu] * kc - j_x0[lu] * eta_zc[lu] * k0c;
        const ScaledComplex den = j_zc[lu] * zeta_x0[lu] * kc - h_x0[lu] * eta_zc[lu] * k0c;
        return (num * complexd(-1.0)) / den;
    }
};

} // namespace

void validate(const MieSeriesControl& ctl) {
    if (!(ctl.tol > 0.0 && ctl.tol < 1.0))
        throw DomainError("MieSeriesControl: tol must lie in (0, 1)");
    if (ctl.l_max_cap < 1 || ctl.l_max_cap > specfun::max_bessel_order)
        throw DomainError("MieSeriesControl: l_max_cap must lie in [1, 200]");
}

SphereGeometry SphereGeometry::from_arc(double radius, double height, double arc) {
    if (!(radius > 0.0) || !(height > 0.0))
        throw DomainError("SphereGeometry: radius and height must be > 0");
    if (arc < 0.0) throw DomainError("SphereGeometry: arc length must be >= 0");
    SphereGeometry g{radius, height, arc / (radius + height)};
    validate(g);
    return g;
}

void validate(const SphereGeometry& g) {
    if (!(g.radius > 0.0)) throw DomainError("SphereGeometry: radius must be > 0");
    if (!(g.height > 0.0)) throw DomainError("SphereGeometry: height must be > 0");
    if (!(g.theta_sep >= 0.0 && g.theta_sep <= pi + 1e-12))
        throw DomainError("SphereGeometry: separation angle must lie in [0, pi]");
}

complexd mie_rs(int l, double omega, double radius, complexd eps) {
    if (l < 1) throw DomainError("mie_rs: order must be >= 1");
    if (l > specfun::max_bessel_order)
        throw OverflowError("mie_rs: order outside special-function envelope");
    check_sphere_args(radius * 2.0, omega, radius, "mie_rs");
    const double k0 = omega / constants::c;
    check_mie_envelope(k0, radius, radius, interior_wavenumber(k0, eps), "mie_rs");
    return MieWorkspace::build(l, omega, radius, eps).rs(l).value();
}

complexd mie_rp(int l, double omega, double radius, complexd eps) {
    if (l < 1) throw DomainError("mie_rp: order must be >= 1");
    if (l > specfun::max_bessel_order)
        throw OverflowError("mie_rp: order outside special-function envelope");
    check_sphere_args(radius * 2.0, omega, radius, "mie_rp");
    const double k0 = omega / constants::c;
    check_mie_envelope(k0, radius, radius, interior_wavenumber(k0, eps), "mie_rp");
    return MieWorkspace::build(l, omega, radius, eps).rp(l).value();
}

complexd mie_rp_nonret(int l, double omega, double radius, complexd eps) {
    if (l < 1) throw DomainError("mie_rp_nonret: order must be >= 1");
    if (!(radius > 0.0)) throw DomainError("mie_rp_nonret: radius must be > 0");
    if (!(omega > 0.0)) throw DomainError("mie_rp_nonret: omega must be > 0");
    near_pole_guard(l, eps, "mie_rp_nonret");
    const double x = omega / constants::c * radius;
    // (l+1)/((2l+1)!!(2l-1)!!) x^{2l+1} in log space: underflows cleanly, never overflows.
    const double ln_mag = std::log(l + 1.0) - specfun::ln_double_factorial(2 * l + 1) -
                          specfun::ln_double_factorial(2 * l - 1) +
                          (2.0 * l + 1.0) * std::log(x);
    const complexd q = (eps - 1.0) / (static_cast<double>(l) * eps + static_cast<double>(l) + 1.0);
    return complexd(0.0, 1.0) * std::exp(ln_mag) * q;
}

GreenTensor g_sphere_coincident(double r, double omega, double radius, complexd eps,
                                const MieSeriesControl& ctl, SeriesReport* rep) {
    validate(ctl);
    check_sphere_args(r, omega, radius, "g_sphere_coincident");
    const double k0 = omega / constants::c;
    const complexd u(k0 * r, 0.0);
    check_mie_envelope(k0, r, radius, interior_wavenumber(k0, eps), "g_sphere_coincident");
    if (k0 * r > specfun::max_bessel_arg)
        throw OverflowError("g_sphere_coincident: k0 r outside special-function envelope");

    const int lmax = ctl.l_max_cap;
    const auto ws = MieWorkspace::build(lmax, omega, radius, eps);
    const auto hu = specfun::sph_hankel1_scaled(lmax, u);
    const auto zu = specfun::riccati_zeta_scaled(lmax, u);

    complexd s_rr = 0.0, s_tt = 0.0;
    const double x_ratio = radius / r;
    SeriesTracker tracker(ctl.tol, x_ratio * x_ratio);
    int l_used = lmax;
    bool converged = false;
    for (int l = 1; l <= lmax; ++l) {
        const auto lu = static_cast<size_t>(l);
        const ScaledComplex h2 = hu[lu] * hu[lu];
        const ScaledComplex z2 = zu[lu] * zu[lu];
        const ScaledComplex rs = ws.rs(l);
        const ScaledComplex rp = ws.rp(l);
        const complexd t_rr =
            (rp * h2).value() * ((2.0 * l + 1.0) * 2.0 * l * (l + 1.0) / std::norm(u));
        const complexd t_tt = (rs * h2 + rp * z2).value() * (2.0 * l + 1.0);
        s_rr += t_rr;
        s_tt += t_tt;
        const double term_mag = std::max(std::abs(t_rr), std::abs(t_tt));
        const double sum_mag = std::max(std::abs(s_rr), std::abs(s_tt));
        if (tracker.step(term_mag, sum_mag)) {
            l_used = l;
            converged = true;
            break;
        }
    }
    const double sum_mag = std::max(std::abs(s_rr), std::abs(s_tt));
    const double tail = tracker.tail_rel(sum_mag);
    if (!converged && !(tail < ctl.tol))
        throw_not_converged("g_sphere_coincident", lmax, tail);
    if (rep) *rep = {l_used, tail};

    const complexd pref = complexd(0.0, 1.0) * k0 / (8.0 * pi);
    return GreenTensor::diagonal(pref * s_rr, pref * s_tt, pref * s_tt,
                                 Basis::spherical_at_point);
}

namespace {

// Shared driver for the three non-retarded power sums. Channel weights are
// polynomial in l; P_l enters only the two-point series.
template <typename TermFn>
std::pair<int, double> run_nonret_series(const char* who, const MieSeriesControl& ctl, double r,
                                         double radius, complexd eps, double* sum_mag_out,
                                         TermFn&& emit_term) {
    validate(ctl);
    const double x = radius / r;
    const double x2 = x * x;
    const long budget = nonret_budget(ctl, r, radius);
    SeriesTracker tracker(ctl.tol, x2);
    double pow_x = x * x2;  // x^{2l+1} at l = 1
    bool converged = false;
    long l_used = budget;
    double sum_mag = 0.0;
    for (long l = 1; l <= budget; ++l) {
        near_pole_guard(static_cast<int>(std::min<long>(l, 1 << 30)), eps, who);
        const complexd q = (eps - 1.0) / (static_cast<double>(l) * (eps + 1.0) + 1.0);
        const double term_mag = emit_term(l, q, pow_x, &sum_mag);
        pow_x *= x2;
        if (tracker.step(term_mag, sum_mag)) {
            l_used = l;
            converged = true;
            break;
        }
    }
    const double tail = tracker.tail_rel(sum_mag);
    if (!converged && !(tail < ctl.tol)) throw_not_converged(who, static_cast<int>(l_used), tail);
    *sum_mag_out = sum_mag;
    return {static_cast<int>(l_used), tail};
}

} // namespace

GreenTensor g_sphere_coincident_nonret(double r, double omega, double radius, complexd eps,
                                       const MieSeriesControl& ctl, SeriesReport* rep) {
    check_sphere_args(r, omega, radius, "g_sphere_coincident_nonret");
    complexd s_rr = 0.0, s_tt = 0.0;
    double sum_mag = 0.0;
    const auto [l_used, tail] = run_nonret_series(
        "g_sphere_coincident_nonret", ctl, r, radius, eps, &sum_mag,
        [&](long l, complexd q, double pow_x, double* mag) {
            const double ld = static_cast<double>(l);
            const complexd t_rr = 2.0 * ld * (ld + 1.0) * (ld + 1.0) * q * pow_x;
            const complexd t_tt = ld * ld * (ld + 1.0) * q * pow_x;
            s_rr += t_rr;
            s_tt += t_tt;
            *mag = std::max(std::abs(s_rr), std::abs(s_tt));
            return std::max(std::abs(t_rr), std::abs(t_tt));
        });
    if (rep) *rep = {l_used, tail};
    const double k0 = omega / constants::c;
    const double pref = 1.0 / (8.0 * pi * k0 * k0 * r * r * r);
    return GreenTensor::diagonal(pref * s_rr, pref * s_tt, pref * s_tt,
                                 Basis::spherical_at_point);
}

complexd g_sphere_rr_twopoint_nonret(const SphereGeometry& g, double omega, complexd eps,
                                     const MieSeriesControl& ctl, SeriesReport* rep) {
    validate(g);
    const double r = g.r();
    check_sphere_args(r, omega, g.radius, "g_sphere_rr_twopoint_nonret");
    const double ct = std::cos(g.theta_sep);

    complexd s = 0.0;
    double p_prev = 1.0, p = ct;  // P_0, P_1
    double sum_mag = 0.0;
    const auto [l_used, tail] = run_nonret_series(
        "g_sphere_rr_twopoint_nonret", ctl, r, g.radius, eps, &sum_mag,
        [&](long l, complexd q, double pow_x, double* mag) {
            const double ld = static_cast<double>(l);
            const double pl = (l == 1) ? p : [&] {
                const double pp1 = ((2.0 * ld - 1.0) * ct * p - (ld - 1.0) * p_prev) / ld;
                p_prev = p;
                p = pp1;
                return pp1;
            }();
            const double coef = ld * (ld + 1.0) * (ld + 1.0) * pow_x;
            s += coef * q * pl;
            *mag = std::abs(s);
            return coef * std::abs(q);  // P-free majorant
        });
    if (rep) *rep = {l_used, tail};
    const double k0 = omega / constants::c;
    return s / (4.0 * pi * k0 * k0 * r * r * r);
}

complexd g_sphere_rr_twopoint_retarded(const SphereGeometry& g, double omega, complexd eps,
                                       const MieSeriesControl& ctl, SeriesReport* rep) {
    validate(g);
    validate(ctl);
    const double r = g.r();
    check_sphere_args(r, omega, g.radius, "g_sphere_rr_twopoint_retarded");
    const double k0 = omega / constants::c;
    check_mie_envelope(k0, r, g.radius, interior_wavenumber(k0, eps),
                       "g_sphere_rr_twopoint_retarded");
    if (k0 * r > specfun::max_bessel_arg)
        throw OverflowError("g_sphere_rr_twopoint_retarded: k0 r outside special-function envelope");

    const int lmax = ctl.l_max_cap;
    const auto ws = MieWorkspace::build(lmax, omega, g.radius, eps);
    const auto hu = specfun::sph_hankel1_scaled(lmax, complexd(k0 * r, 0.0));
    const double ct = std::cos(g.theta_sep);

    complexd s = 0.0;
    double p_prev = 1.0, p = ct;
    const double x_ratio = g.radius / r;
    SeriesTracker tracker(ctl.tol, x_ratio * x_ratio);
    int l_used = lmax;
    bool converged = false;
    for (int l = 1; l <= lmax; ++l) {
        const auto lu = static_cast<size_t>(l);
        if (l > 1) {
            const double pp1 = ((2.0 * l - 1.0) * ct * p - (l - 1.0) * p_prev) / l;
            p_prev = p;
            p = pp1;
        }
        const complexd core = (ws.rp(l) * (hu[lu] * hu[lu])).value() * (2.0 * l + 1.0) *
                              static_cast<double>(l) * (l + 1.0);
        s += core * p;
        if (tracker.step(std::abs(core), std::abs(s))) {
            l_used = l;
            converged = true;
            break;
        }
    }
    const double tail = tracker.tail_rel(std::abs(s));
    if (!converged && !(tail < ctl.tol))
        throw_not_converged("g_sphere_rr_twopoint_retarded", lmax, tail);
    if (rep) *rep = {l_used, tail};

    return complexd(0.0, 1.0) * s / (4.0 * pi * k0 * r * r);
}

} // namespace srfid
