#include "srfid/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

namespace srfid::specfun {

namespace {

// Keep mantissa magnitude within 2^+-48 of unity.
constexpr long renorm_limit = 48;

double abs_max_component(complexd v) {
    return std::max(std::abs(v.real()), std::abs(v.imag()));
}

complexd ldexp_c(complexd v, long k) {
    int ki = static_cast<int>(std::clamp<long>(k, -4400, 4400));
    return {std::ldexp(v.real(), ki), std::ldexp(v.imag(), ki)};
}

void check_envelope(int l, complexd z, const char* who) {
    if (l < 0) throw DomainError(std::string(who) + ": order must be non-negative");
    if (l > max_bessel_order)
        throw OverflowError(std::string(who) + ": order " + std::to_string(l) +
                            " outside supported envelope (l <= 200)");
    if (std::abs(z) > max_bessel_arg)
        throw OverflowError(std::string(who) + ": |z| outside supported envelope (|z| <= 1e4)");
}

} // namespace

ScaledComplex ScaledComplex::normalized(ScaledComplex s) {
    if (s.zero()) return {complexd(0.0, 0.0), 0};
    const double m = abs_max_component(s.man);
    const int k = std::ilogb(m);
    if (k > renorm_limit || k < -renorm_limit) {
        s.man = ldexp_c(s.man, -k);
        s.ex += k;
    }
    return s;
}

complexd ScaledComplex::value() const {
    if (zero()) return {0.0, 0.0};
    ScaledComplex s = normalized(*this);
    if (s.ex > 1040)
        throw OverflowError("scaled value exceeds double range (2^" + std::to_string(s.ex) + ")");
    if (s.ex < -1120) return {0.0, 0.0};  // clean underflow
    return ldexp_c(s.man, s.ex);
}

double ScaledComplex::log2_abs() const {
    if (zero()) return -std::numeric_limits<double>::infinity();
    return std::log2(std::abs(man)) + static_cast<double>(ex);
}

ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b) {
    return ScaledComplex::normalized({a.man * b.man, a.ex + b.ex});
}

ScaledComplex operator*(const ScaledComplex& a, complexd b) {
    return ScaledComplex::normalized({a.man * b, a.ex});
}

ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b) {
    if (b.zero()) throw DomainError("ScaledComplex: division by zero");
    return ScaledComplex::normalized({a.man / b.man, a.ex - b.ex});
}

ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b) {
    if (a.zero()) return b;
    if (b.zero()) return a;
    const long d = a.ex - b.ex;
    if (d > 2 * renorm_limit + 60) return a;
    if (d < -(2 * renorm_limit + 60)) return b;
    if (d >= 0) return ScaledComplex::normalized({a.man + ldexp_c(b.man, -d), a.ex});
    return ScaledComplex::normalized({ldexp_c(a.man, d) + b.man, b.ex});
}

ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b) {
    return a + ScaledComplex{-b.man, b.ex};
}

// exp(i z) = e^{-Im z} (cos(Re z) + i sin(Re z)), exponent carried in base 2.
ScaledComplex exp_i_scaled(complexd z) {
    const double x = z.real(), y = z.imag();
    const double t = -y * std::numbers::log2e;  // log2 |e^{iz}|
    const double ti = std::floor(t);
    const complexd phase = std::polar(std::exp2(t - ti), x);
    return ScaledComplex::normalized({phase, static_cast<long>(ti)});
}

ScaledComplex sin_scaled(complexd z) {
    if (std::abs(z.imag()) <= 40.0) return ScaledComplex::from(std::sin(z));
    // One exponential dominates; the other is below 1e-34 relative.
    const ScaledComplex ep = exp_i_scaled(z);
    const ScaledComplex em = exp_i_scaled(-z);
    const ScaledComplex big = (ep.ex > em.ex) ? ep * complexd(0.0, -0.5) : em * complexd(0.0, 0.5);
    return big;
}

ScaledComplex cos_scaled(complexd z) {
    if (std::abs(z.imag()) <= 40.0) return ScaledComplex::from(std::cos(z));
    const ScaledComplex ep = exp_i_scaled(z);
    const ScaledComplex em = exp_i_scaled(-z);
    return (ep.ex > em.ex) ? ep * complexd(0.5, 0.0) : em * complexd(0.5, 0.0);
}

std::vector<ScaledComplex> sph_bessel_j_scaled(int lmax, complexd z) {
    if (lmax < 0) throw DomainError("sph_bessel_j_scaled: negative order");
    if (z == complexd(0.0, 0.0)) {
        std::vector<ScaledComplex> out(static_cast<size_t>(lmax) + 1);
        out[0] = ScaledComplex::from(1.0);
        return out;
    }
    const double az = std::abs(z);

    // Start order for the Miller recurrence: past the turning point by enough
    // that seed contamination decays below 1e-15 by the time l <= lmax.
    const int buffer = std::max(
        static_cast<int>(std::ceil(std::sqrt(40.0 * (lmax + 1)))),
        static_cast<int>(std::ceil(std::pow(18.0 * std::sqrt(std::max(az, 1.0)), 2.0 / 3.0)))) + 12;
    const int lstart = std::max(lmax + 1, static_cast<int>(std::ceil(az))) + buffer;

    const int keep = std::max(lmax, 1);
    std::vector<ScaledComplex> tmp(static_cast<size_t>(keep) + 1);

    complexd fl(1.0, 0.0);   // f_{l}
    complexd fp1(0.0, 0.0);  // f_{l+1}
    long ex = 0;
    const complexd inv_z = 1.0 / z;
    for (int l = lstart; l >= 0; --l) {
        if (l <= keep) tmp[static_cast<size_t>(l)] = {fl, ex};
        const complexd fm1 = (2.0 * l + 1.0) * inv_z * fl - fp1;
        fp1 = fl;
        fl = fm1;
        const double m = std::max(abs_max_component(fl), abs_max_component(fp1));
        if (m > 0x1p400) {
            fl = ldexp_c(fl, -400);
            fp1 = ldexp_c(fp1, -400);
            ex += 400;
        } else if (m < 0x1p-400 && m > 0.0) {
            fl = ldexp_c(fl, 400);
            fp1 = ldexp_c(fp1, 400);
            ex -= 400;
        }
    }

    // Anchor on whichever of j_0 = sin z / z, j_1 = (sin z / z - cos z)/z is larger.
    const ScaledComplex inv_zs = ScaledComplex::from(inv_z);
    const ScaledComplex j0 = sin_scaled(z) * inv_zs;
    const ScaledComplex j1 = (sin_scaled(z) * inv_zs - cos_scaled(z)) * inv_zs;
    ScaledComplex ratio;
    if (j0.log2_abs() >= j1.log2_abs())
        ratio = j0 / ScaledComplex::normalized(tmp[0]);
    else
        ratio = j1 / ScaledComplex::normalized(tmp[1]);

    std::vector<ScaledComplex> out(static_cast<size_t>(lmax) + 1);
    for (int l = 0; l <= lmax; ++l)
        out[static_cast<size_t>(l)] = ScaledComplex::normalized(tmp[static_cast<size_t>(l)]) * ratio;
    return out;
}

std::vector<ScaledComplex> sph_hankel1_scaled(int lmax, complexd z) {
    if (lmax < 0) throw DomainError("sph_hankel1_scaled: negative order");
    if (z == complexd(0.0, 0.0)) throw DomainError("sph_hankel1_scaled: z = 0 is a pole");
    const ScaledComplex inv_zs = ScaledComplex::from(1.0 / z);
    const ScaledComplex eiz = exp_i_scaled(z);

    std::vector<ScaledComplex> out(static_cast<size_t>(lmax) + 1);
    ScaledComplex hm1 = eiz * inv_zs;                         // h_{-1}
    ScaledComplex hl = hm1 * complexd(0.0, -1.0);             // h_0 = -i e^{iz}/z
    out[0] = hl;
    for (int l = 0; l < lmax; ++l) {
        ScaledComplex hp1 = hl * ((2.0 * l + 1.0) / z) - hm1;
        hm1 = hl;
        hl = ScaledComplex::normalized(hp1);
        out[static_cast<size_t>(l + 1)] = hl;
    }
    return out;
}

namespace {

std::vector<ScaledComplex> riccati_from(const std::vector<ScaledComplex>& f,
                                        ScaledComplex fm1, complexd z) {
    std::vector<ScaledComplex> out(f.size());
    out[0] = fm1;  // eta_0 = f_{-1} when l = 0 contributes no -l f_l / z term
    for (size_t l = 1; l < f.size(); ++l)
        out[l] = f[l - 1] - f[l] * (static_cast<double>(l) / z);
    return out;
}

} // namespace

std::vector<ScaledComplex> riccati_eta_scaled(int lmax, complexd z) {
    if (z == complexd(0.0, 0.0)) throw DomainError("riccati_eta_scaled: z = 0 rejected");
    const ScaledComplex jm1 = cos_scaled(z) * ScaledComplex::from(1.0 / z);
    return riccati_from(sph_bessel_j_scaled(lmax, z), jm1, z);
}

std::vector<ScaledComplex> riccati_zeta_scaled(int lmax, complexd z) {
    if (z == complexd(0.0, 0.0)) throw DomainError("riccati_zeta_scaled: z = 0 is a pole");
    const ScaledComplex hm1 = exp_i_scaled(z) * ScaledComplex::from(1.0 / z);
    return riccati_from(sph_hankel1_scaled(lmax, z), hm1, z);
}

complexd sph_bessel_j(int l, complexd z) {
    check_envelope(l, z, "sph_bessel_j");
    if (z == complexd(0.0, 0.0)) return (l == 0) ? complexd(1.0, 0.0) : complexd(0.0, 0.0);
    return sph_bessel_j_scaled(l, z)[static_cast<size_t>(l)].value();
}

complexd sph_hankel1(int l, complexd z) {
    check_envelope(l, z, "sph_hankel1");
    if (z == complexd(0.0, 0.0)) throw DomainError("sph_hankel1: z = 0 is a pole");
    return sph_hankel1_scaled(l, z)[static_cast<size_t>(l)].value();
}

complexd riccati_eta(int l, complexd z) {
    check_envelope(l, z, "riccati_eta");
    if (z == complexd(0.0, 0.0)) throw DomainError("riccati_eta: z = 0 rejected");
    return riccati_eta_scaled(l, z)[static_cast<size_t>(l)].value();
}

complexd riccati_zeta(int l, complexd z) {
    check_envelope(l, z, "riccati_zeta");
    if (z == complexd(0.0, 0.0)) throw DomainError("riccati_zeta: z = 0 is a pole");
    return riccati_zeta_scaled(l, z)[static_cast<size_t>(l)].value();
}

double legendre_p(int l, double x) {
    if (l < 0) throw DomainError("legendre_p: negative degree");
    if (std::abs(x) > 1.0 + 1e-12) throw DomainError("legendre_p: |x| > 1");
    x = std::clamp(x, -1.0, 1.0);
    if (l == 0) return 1.0;
    double pm1 = 1.0, p = x;
    for (int k = 1; k < l; ++k) {
        const double pp1 = ((2.0 * k + 1.0) * x * p - k * pm1) / (k + 1.0);
        pm1 = p;
        p = pp1;
    }
    return p;
}

double legendre_p_deriv(int l, double x) {
    if (l < 0) throw DomainError("legendre_p_deriv: negative degree");
    if (std::abs(x) > 1.0 + 1e-12) throw DomainError("legendre_p_deriv: |x| > 1");
    x = std::clamp(x, -1.0, 1.0);
    if (l == 0) return 0.0;
    if (std::abs(x) == 1.0) {
        const double v = 0.5 * l * (l + 1.0);
        return (x > 0.0) ? v : ((l % 2 == 0) ? -v : v);  // P_l'(-1) = (-1)^{l-1} v
    }
    const double pl = legendre_p(l, x);
    const double plm1 = legendre_p(l - 1, x);
    return l * (x * pl - plm1) / (x * x - 1.0);
}

double assoc_legendre(int l, int m, double x) {
    if (l < 0 || m < 0 || m > l) throw DomainError("assoc_legendre: need 0 <= m <= l");
    if (std::abs(x) > 1.0 + 1e-12) throw DomainError("assoc_legendre: |x| > 1");
    x = std::clamp(x, -1.0, 1.0);
    if (m == 0) return legendre_p(l, x);

    const double s2 = (1.0 - x) * (1.0 + x);  // sin^2 theta
    if (s2 <= 0.0) return 0.0;                // P_l^m(+-1) = 0 for m >= 1

    // Seed P_m^m = (2m-1)!! (1-x^2)^{m/2}, evaluated in log space.
    const double ln_pmm = ln_double_factorial(2 * m - 1) + 0.5 * m * std::log(s2);
    if (ln_pmm > 700.0) throw OverflowError("assoc_legendre: P_m^m exceeds double range");
    double pmm = std::exp(ln_pmm);
    if (l == m) return pmm;

    double pm1 = pmm;                            // P_m^m
    double p = x * (2.0 * m + 1.0) * pmm;        // P_{m+1}^m
    for (int k = m + 1; k < l; ++k) {
        const double pp1 = ((2.0 * k + 1.0) * x * p - (k + m) * pm1) / (k - m + 1.0);
        pm1 = p;
        p = pp1;
    }
    return p;
}

double assoc_legendre_dtheta(int l, int m, double theta) {
    if (l < 0 || m < 0 || m > l) throw DomainError("assoc_legendre_dtheta: need 0 <= m <= l");
    if (theta < -1e-12 || theta > std::numbers::pi + 1e-12)
        throw DomainError("assoc_legendre_dtheta: theta outside [0, pi]");
    const double x = std::cos(theta);
    const double st = std::sin(theta);
    if (m == 0) return -st * legendre_p_deriv(l, x);
    if (std::abs(st) < 1e-9) {
        // P_l^m ~ sin^m(theta) near the poles; only m = 1 has a nonzero slope.
        if (m != 1) return 0.0;
        const double v = 0.5 * l * (l + 1.0);
        return (x > 0.0) ? v : ((l % 2 == 0) ? v : -v);  // (-1)^l v at theta = pi
    }
    if (l == m) {
        // d/dtheta [(2m-1)!! sin^m theta] = m cot(theta) P_m^m
        return m * (x / st) * assoc_legendre(l, m, x);
    }
    const double pl = assoc_legendre(l, m, x);
    const double plm1 = assoc_legendre(l - 1, m, x);
    // dP_l^m/dx = (l x P_l^m - (l+m) P_{l-1}^m)/(x^2-1); chain rule with x = cos theta.
    return (l * x * pl - (l + m) * plm1) / st;
}

double ln_double_factorial(int n) {
    if (n < -1) throw DomainError("ln_double_factorial: n < -1");
    if (n <= 0) return 0.0;  // (-1)!! = 0!! = 1
    if (n % 2 == 1) {
        const int k = (n - 1) / 2;  // n = 2k+1
        return std::lgamma(2.0 * k + 2.0) - k * std::numbers::ln2 - std::lgamma(k + 1.0);
    }
    const int k = n / 2;  // n = 2k
    return k * std::numbers::ln2 + std::lgamma(k + 1.0);
}

double sinc(double t) {
    const double a = std::abs(t);
    if (a < 1e-4) {
        const double t2 = t * t;
        return 1.0 - t2 / 6.0 + t2 * t2 / 120.0 - t2 * t2 * t2 / 5040.0;
    }
    return std::sin(t) / t;
}

} // namespace srfid::specfun
