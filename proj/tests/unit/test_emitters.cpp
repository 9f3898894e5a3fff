#include <doctest.h>

#include <cmath>
#include <complex>
#include <numbers>
#include <random>

#include "srfid/constants.hpp"
#include "srfid/dielectric.hpp"
#include "srfid/emitters.hpp"
#include "srfid/green_free.hpp"
#include "srfid/green_planar.hpp"

using namespace srfid;

namespace {

constexpr double kOmega = 3.4753e15;

// Oracles for PV integrals of w(omega) omega^2 / (omega + omega_kn), written
// from hand antiderivatives before the implementation was run.
//
// (a) pole outside (Omega > 0), w = 1:
//     int_a^b w^2/(w+W) dw = (b^2-a^2)/2 - W(b-a) + W^2 ln((b+W)/(a+W))
double oracle_pole_free_const(double a, double b, double W) {
    return 0.5 * (b * b - a * a) - W * (b - a) + W * W * std::log((b + W) / (a + W));
}

// (b) pole outside, w(omega) = omega:
//     int_a^b w^3/(w+W) dw = (b^3-a^3)/3 - W(b^2-a^2)/2 + W^2(b-a)
//                            - W^3 ln((b+W)/(a+W))
double oracle_pole_free_linear(double a, double b, double W) {
    return (b * b * b - a * a * a) / 3.0 - 0.5 * W * (b * b - a * a) + W * W * (b - a) -
           W * W * W * std::log((b + W) / (a + W));
}

// (c) interior pole at p in (a,b), w = 1:
//     PV int_a^b w^2/(w-p) dw = (b^2-a^2)/2 + p(b-a) + p^2 ln((b-p)/(p-a))
double oracle_interior_const(double a, double b, double p) {
    return 0.5 * (b * b - a * a) + p * (b - a) + p * p * std::log((b - p) / (p - a));
}

const double kShiftPref = -constants::mu0 / (std::numbers::pi * constants::hbar);

} // namespace

TEST_CASE("Einstein rate: contraction route equals the closed form, 100 draws") {
    std::mt19937_64 rng(424242);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::uniform_real_distribution<double> lw(14.0, 16.0);
    for (int i = 0; i < 100; ++i) {
        const double w = std::pow(10.0, lw(rng));
        Vec3 d{u(rng), u(rng), u(rng)};
        if (std::abs(d[0]) + std::abs(d[1]) + std::abs(d[2]) < 1e-3) d[2] = 0.5;
        for (auto& c : d) c *= constants::debye;
        const Emitter em{w, d, {0.0, 0.0, 0.0}};
        const double via_g = transition_rate(em, g0_im_coincident(w));
        const double closed = einstein_a_rate(em);
        CAPTURE(i);
        CHECK(std::abs(via_g - closed) / closed <= 1e-12);
    }
}

TEST_CASE("rate is bilinear in the dipole") {
    const Emitter em{kOmega, {0.0, 1e-30, 2e-30}, {}};
    Emitter em2 = em;
    for (auto& c : em2.dipole) c *= 2.0;
    const auto imG = g0_im_coincident(kOmega);
    CHECK(transition_rate(em2, imG) == 4.0 * transition_rate(em, imG));
}

TEST_CASE("emitter validation") {
    CHECK_THROWS_AS(validate(Emitter{0.0, {0.0, 0.0, 1e-30}, {}}), DomainError);
    CHECK_THROWS_AS(validate(Emitter{kOmega, {0.0, 0.0, 0.0}, {}}), DomainError);
}

TEST_CASE("transition_rate insists on a real (imaginary-part) tensor") {
    const Emitter em{kOmega, {0.0, 0.0, 1e-30}, {}};
    const auto full = g0_full({3e-9, 0.0, 0.0}, kOmega);  // complex entries
    CHECK_THROWS_AS((void)transition_rate(em, full), DomainError);
}

TEST_CASE("negative mode density is flagged as inconsistent input") {
    const Emitter em{kOmega, {0.0, 0.0, 1e-30}, {}};
    CHECK_THROWS_AS((void)transition_rate(em, GreenTensor::isotropic({-1.0, 0.0})),
                    InconsistencyError);
    CHECK_THROWS_AS((void)purcell_rates(em, GreenTensor::isotropic({-1e30, 0.0})),
                    InconsistencyError);
}

TEST_CASE("purcell_rates splits free and environment parts consistently") {
    const complexd eps(1.71, 0.05);
    const Emitter em{kOmega, {1e-30, 0.0, 2e-30}, {0.0, 0.0, 5e-9}};
    const auto imG_sc = g1_planar_coincident_nonret(5e-9, kOmega, eps).imag_part();
    const auto r = purcell_rates(em, imG_sc);
    CHECK(r.gamma_free == doctest::Approx(einstein_a_rate(em)).epsilon(1e-15));
    CHECK(r.gamma_env == doctest::Approx(transition_rate(em, imG_sc)).epsilon(1e-12));
    CHECK(r.total() == r.gamma_free + r.gamma_env);
    CHECK(r.total() > 0.0);
}

TEST_CASE("PV integral, pole outside the window, constant weight") {
    const double a = 1e15, b = 9e15, W = 2.2e15;
    const FrequencyGrid grid{a, b};
    const double got = pv_shift_integral([](double) { return 1.0; }, W, grid);
    const double want = kShiftPref * oracle_pole_free_const(a, b, W);
    CHECK(got == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("PV integral, pole outside, linear weight") {
    const double a = 5e14, b = 4e15, W = 1.3e15;
    const double got = pv_shift_integral([](double w) { return w; }, W, {a, b});
    const double want = kShiftPref * oracle_pole_free_linear(a, b, W);
    CHECK(got == doctest::Approx(want).epsilon(1e-8));
}

TEST_CASE("PV integral with an interior pole against the symmetric-log oracle") {
    const double a = 1e15, b = 7e15;
    for (double p : {2.5e15, 4.0e15, 6.9e15}) {
        const double got = pv_shift_integral([](double) { return 1.0; }, -p, {a, b});
        const double want = kShiftPref * oracle_interior_const(a, b, p);
        CAPTURE(p);
        CHECK(got == doctest::Approx(want).epsilon(1e-8));
    }
}

TEST_CASE("PV integral is additive over subwindows (pole-free)") {
    const double a = 1e15, b = 9e15, m = 3.7e15, W = 2.2e15;
    auto w1 = [](double) { return 1.0; };
    const double whole = pv_shift_integral(w1, W, {a, b});
    const double split = pv_shift_integral(w1, W, {a, m}) + pv_shift_integral(w1, W, {m, b});
    CHECK(whole == doctest::Approx(split).epsilon(1e-10));
}

TEST_CASE("pole pinned to a window edge is rejected") {
    CHECK_THROWS_AS(
        (void)pv_shift_integral([](double) { return 1.0; }, -1e15, {1e15, 2e15}),
        RangeError);
    CHECK_THROWS_AS(
        (void)pv_shift_integral([](double) { return 1.0; }, -2e15, {1e15, 2e15}),
        RangeError);
}

TEST_CASE("frequency grid validation") {
    CHECK_THROWS_AS(validate(FrequencyGrid{2.0, 1.0}), RangeError);
    CHECK_THROWS_AS(validate(FrequencyGrid{-1.0, 1.0}), RangeError);
    CHECK_NOTHROW(validate(FrequencyGrid{0.0, 1.0}));
}

TEST_CASE("frequency_shift wrapper with a constant mode density") {
    // ImG = c0 I -> w(omega) = c0 |d|^2, downward pole-free path.
    const double c0 = 3.7e4;  // 1/m, arbitrary scale
    const Vec3 d{1e-30, -2e-30, 0.5e-30};
    const double d2 = d[0] * d[0] + d[1] * d[1] + d[2] * d[2];
    const Emitter em{kOmega, d, {}};
    const FrequencyGrid grid{1e15, 8e15};
    auto imG = [&](double) { return GreenTensor::isotropic({c0, 0.0}); };
    const double got = frequency_shift(em, imG, grid);
    const double want =
        kShiftPref * c0 * d2 * oracle_pole_free_const(grid.omega_min, grid.omega_max, kOmega);
    CHECK(got == doctest::Approx(want).epsilon(1e-8));
    CHECK(got < 0.0);  // positive mode density, downward transition: red shift

    // Signed overload with an interior pole.
    const double p = 3e15;
    const double got2 = frequency_shift(em, imG, grid, -p);
    const double want2 =
        kShiftPref * c0 * d2 * oracle_interior_const(grid.omega_min, grid.omega_max, p);
    CHECK(got2 == doctest::Approx(want2).epsilon(1e-8));
}

TEST_CASE("rotational averages: quadratic weights match full contractions") {
    // Azimuthal averaging reduces the rates to scalar quadratic weights; the
    // weight times the channel density must equal the direct tensor
    // contraction. Monte Carlo over 1e5 random dipoles, seeded.
    std::mt19937_64 rng(777001);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double s = 2.41e7;  // arbitrary channel density, 1/m
    const auto planar_coin = GreenTensor::diagonal({s, 0.0}, {s, 0.0}, {2.0 * s, 0.0});
    GreenTensor planar_cross;  // only the zz entry survives in the cross term
    planar_cross(2, 2) = complexd(s, 0.0);
    const double ar = 0.7 * s, aphi = 0.3 * s;
    const auto sphere = GreenTensor::diagonal({ar, 0.0}, {aphi, 0.0}, {aphi, 0.0},
                                              Basis::spherical_at_point);

    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const Vec3 d{u(rng), u(rng), u(rng)};
        const double w_coin = rot_avg_planar_coincident(d) * s;
        const double c_coin = contract(d, planar_coin).real();
        const double w_cross = rot_avg_planar_cross(d) * s;
        const double c_cross = contract(d, planar_cross).real();
        // rot_avg_sphere puts the radial component in d_z; the tensor triad
        // is ordered (e_r, e_theta, e_phi), so reorder for the contraction.
        const double w_sph = rot_avg_sphere(ar, aphi, d);
        const double c_sph = contract(Vec3{d[2], d[0], d[1]}, sphere).real();
        worst = std::max(worst, std::abs(w_coin - c_coin) / (std::abs(c_coin) + 1e-300));
        worst = std::max(worst, std::abs(w_cross - c_cross) / (std::abs(c_cross) + 1e-30));
        worst = std::max(worst, std::abs(w_sph - c_sph) / (std::abs(c_sph) + 1e-300));
    }
    CHECK(worst <= 1e-2);
}

TEST_CASE("rotational average formulas, hand values") {
    const Vec3 d{3.0, -4.0, 12.0};
    CHECK(rot_avg_planar_coincident(d) == doctest::Approx(9.0 + 16.0 + 288.0));
    CHECK(rot_avg_planar_cross(d) == doctest::Approx(144.0));
    CHECK(rot_avg_sphere(2.0, 0.5, d) == doctest::Approx(0.5 * 25.0 + 2.0 * 144.0));
}
