#pragma once

#include <complex>
#include <vector>

#include "srfid/errors.hpp"

namespace srfid::specfun {

using complexd = std::complex<double>;

// Supported envelope for the spherical Bessel/Hankel family. Orders or
// arguments beyond it raise OverflowError; inside it, values still
// unrepresentable in double (e.g. h_200 at |z| ~ 1e-3) raise as well, while
// true underflow flushes to zero.
inline constexpr int max_bessel_order = 200;
inline constexpr double max_bessel_arg = 1.0e4;

// ---------------------------------------------------------------------------
// Scaled complex arithmetic.
//
// Multipole sums pair h_l(k0 r)^2 (overflowing double near l ~ 35 for
// k0 r ~ 1e-3) with Mie coefficients ~ (k0 R)^{2l+1} (underflowing just as
// fast). Each factor is carried as mantissa * 2^ex so the bounded product
// can be assembled exactly; only final, physical values are converted back
// to plain double.
// ---------------------------------------------------------------------------
struct ScaledComplex {
    complexd man{0.0, 0.0};
    long ex = 0;

    static ScaledComplex from(complexd v) { return normalized({v, 0}); }
    static ScaledComplex normalized(ScaledComplex s);

    bool zero() const { return man == complexd(0.0, 0.0); }

    // Plain double value; throws OverflowError if out of range upward,
    // flushes to zero downward.
    complexd value() const;

    // log2 of the magnitude, -inf for zero. Cheap comparisons.
    double log2_abs() const;

    friend ScaledComplex operator*(const ScaledComplex& a, const ScaledComplex& b);
    friend ScaledComplex operator*(const ScaledComplex& a, complexd b);
    friend ScaledComplex operator/(const ScaledComplex& a, const ScaledComplex& b);
    friend ScaledComplex operator+(const ScaledComplex& a, const ScaledComplex& b);
    friend ScaledComplex operator-(const ScaledComplex& a, const ScaledComplex& b);
};

// exp(i z), sin z, cos z in scaled form; safe for |Im z| up to the envelope
// where the plain functions would overflow.
ScaledComplex exp_i_scaled(complexd z);
ScaledComplex sin_scaled(complexd z);
ScaledComplex cos_scaled(complexd z);

// Batch spherical Bessel j_0..j_lmax (downward Miller recurrence, anchored
// on the larger of j_0, j_1) and outgoing Hankel h^(1)_0..h^(1)_lmax
// (upward recurrence from e^{iz}/z). Requires z != 0.
std::vector<ScaledComplex> sph_bessel_j_scaled(int lmax, complexd z);
std::vector<ScaledComplex> sph_hankel1_scaled(int lmax, complexd z);

// Riccati-Bessel derivative combinations built from the arrays above:
//   eta_l(z)  = (1/z) d/dz [ z j_l(z) ]  = j_{l-1}(z) - l j_l(z) / z
//   zeta_l(z) = (1/z) d/dz [ z h_l(z) ]  = h_{l-1}(z) - l h_l(z) / z
// with j_{-1} = cos z / z and h_{-1} = e^{iz} / z.
std::vector<ScaledComplex> riccati_eta_scaled(int lmax, complexd z);
std::vector<ScaledComplex> riccati_zeta_scaled(int lmax, complexd z);

// ---------------------------------------------------------------------------
// Public (plain double) surface.
// ---------------------------------------------------------------------------

// Spherical Bessel function of the first kind, complex argument.
complexd sph_bessel_j(int l, complexd z);

// Spherical Hankel function of the first kind. z == 0 is a pole. Accuracy is
// relative to the complex magnitude; a component at the noise floor of the
// dominant one (Re h_l for real z deep in the evanescent regime) is not
// separately guaranteed.
complexd sph_hankel1(int l, complexd z);

// eta_l / zeta_l as defined above, plain values. z == 0 rejected.
complexd riccati_eta(int l, complexd z);
complexd riccati_zeta(int l, complexd z);

// Legendre polynomial P_l(x), |x| <= 1, upward recurrence.
double legendre_p(int l, double x);

// dP_l/dx, finite at the endpoints.
double legendre_p_deriv(int l, double x);

// Associated Legendre P_l^m(x) WITHOUT the Condon-Shortley phase:
// P_l^m = (1-x^2)^{m/2} d^m P_l / dx^m, 0 <= m <= l.
double assoc_legendre(int l, int m, double x);

// d/dtheta P_l^m(cos theta), theta in [0, pi], same phase convention.
double assoc_legendre_dtheta(int l, int m, double theta);

// ln(n!!) for n >= -1 (ln((-1)!!) = ln(0!!) = 0).
double ln_double_factorial(int n);

// sin(t)/t, series form below |t| = 1e-4 to preserve relative accuracy.
double sinc(double t);

} // namespace srfid::specfun
