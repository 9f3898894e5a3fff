#include <doctest.h>

#include <cmath>
#include <complex>

#include "srfid/constants.hpp"
#include "srfid/green_free.hpp"

using namespace srfid;

namespace {

constexpr double kOmega = 3.4753e15;  // rad/s, the d-line scale used throughout
const double kK0 = kOmega / constants::c;

// Textbook closed form G = (e^{ikr}/4 pi r)[P (I) + Q rhat rhat],
// P = 1 + i/(kr) - 1/(kr)^2, Q = -1 - 3i/(kr) + 3/(kr)^2; oracle coded
// from scratch against which the library dyad is compared entrywise.
GreenTensor oracle_full(const Vec3& rho, double omega) {
    const double r = std::sqrt(rho[0] * rho[0] + rho[1] * rho[1] + rho[2] * rho[2]);
    const double k = omega / constants::c;
    const complexd i(0.0, 1.0);
    const double kr = k * r;
    const complexd P = 1.0 + i / kr - 1.0 / (kr * kr);
    const complexd Q = -1.0 - 3.0 * i / kr + 3.0 / (kr * kr);
    const complexd pref = std::exp(i * kr) / (4.0 * std::numbers::pi * r);
    GreenTensor g;
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            const double rr = rho[a] * rho[b] / (r * r);
            g(a, b) = pref * (P * (a == b ? 1.0 : 0.0) + Q * rr);
        }
    return g;
}

} // namespace

TEST_CASE("coincidence mode density is isotropic omega/(6 pi c)") {
    const auto g = g0_im_coincident(kOmega);
    const double want = kK0 / (6.0 * std::numbers::pi);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            if (a == b)
                CHECK(g(a, b) == complexd(want, 0.0));
            else
                CHECK(g(a, b) == complexd(0.0, 0.0));
        }
}

TEST_CASE("isotropic two-point form and its coincidence limit") {
    const double rho = 87e-9;
    const auto g = g0_im_twopoint(rho, kOmega);
    const double want = kK0 * std::sin(kK0 * rho) / (kK0 * rho) / (6.0 * std::numbers::pi);
    CHECK(g(0, 0).real() == doctest::Approx(want).epsilon(1e-14));
    CHECK(g(2, 2).real() == doctest::Approx(want).epsilon(1e-14));
    // rho = 0 reduces to the coincidence tensor exactly.
    const auto at0 = g0_im_twopoint(0.0, kOmega);
    const auto coin = g0_im_coincident(kOmega);
    CHECK(at0(0, 0) == coin(0, 0));
    // Smooth near the series switch.
    const double eps_rho = 0.99e-4 / kK0;
    const double just_above = 1.01e-4 / kK0;
    CHECK(g0_im_twopoint(eps_rho, kOmega)(0, 0).real() ==
          doctest::Approx(g0_im_twopoint(just_above, kOmega)(0, 0).real()).epsilon(1e-8));
}

TEST_CASE("full dyad against the P/Q closed form, skew separation") {
    const Vec3 rho{30e-9, -40e-9, 120e-9};
    const auto got = g0_full(rho, kOmega);
    const auto want = oracle_full(rho, kOmega);
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            CAPTURE(a);
            CAPTURE(b);
            CHECK(std::abs(got(a, b) - want(a, b)) <= 1e-12 * std::abs(want(1, 1)));
            CHECK(got(a, b) == got(b, a));  // symmetric dyad
        }
}

TEST_CASE("orientation trace of Im G0 equals the isotropic form") {
    // (Im G_xx + Im G_yy + Im G_zz)/3 at separation rho xhat must equal
    // k0 sinc(k0 rho)/(6 pi) -- ties the full dyad to the two-point form.
    for (double rho : {5e-9, 50e-9, 300e-9, 2e-6}) {
        const auto g = g0_full({rho, 0.0, 0.0}, kOmega);
        const double tr = (g(0, 0).imag() + g(1, 1).imag() + g(2, 2).imag()) / 3.0;
        const double want = g0_im_twopoint(rho, kOmega)(0, 0).real();
        CAPTURE(rho);
        CHECK(tr == doctest::Approx(want).epsilon(1e-12));
    }
}

TEST_CASE("longitudinal imaginary part equals (k0/2 pi) j1(x)/x") {
    for (double rho : {20e-9, 150e-9, 900e-9}) {
        const double x = kK0 * rho;
        const double j1 = std::sin(x) / (x * x) - std::cos(x) / x;
        const double want = kK0 / (2.0 * std::numbers::pi) * j1 / x;
        const auto g = g0_full({rho, 0.0, 0.0}, kOmega);
        CHECK(g(0, 0).imag() == doctest::Approx(want).epsilon(1e-11));
    }
}

TEST_CASE("small-separation imaginary part approaches the coincidence value") {
    const double rho = 1e-5 / kK0;  // k0 rho = 1e-5
    const auto g = g0_full({0.0, 0.0, rho}, kOmega);
    const double want = kK0 / (6.0 * std::numbers::pi);
    // Cancellation-limited at tiny k0 rho; 1e-4 relative is the honest bar.
    CHECK(g(2, 2).imag() == doctest::Approx(want).epsilon(1e-4));
    CHECK(g(0, 0).imag() == doctest::Approx(want).epsilon(1e-4));
}

TEST_CASE("domain validation") {
    CHECK_THROWS_AS((void)g0_full({0.0, 0.0, 0.0}, kOmega), DomainError);
    CHECK_THROWS_AS((void)g0_full({1e-9, 0.0, 0.0}, -1.0), DomainError);
    CHECK_THROWS_AS((void)g0_im_twopoint(-1e-9, kOmega), DomainError);
    CHECK_THROWS_AS((void)g0_im_coincident(-1.0), DomainError);
}
