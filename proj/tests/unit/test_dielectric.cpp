#include <doctest.h>

#include <cmath>
#include <complex>
#include <sstream>

#include "srfid/constants.hpp"
#include "srfid/dielectric.hpp"

using namespace srfid;

namespace {

const char* kSmallTable =
    "# comment line\n"
    "\n"
    "0.0,2.0,0.0\n"
    "1.0,3.0,0.5\n"
    "2.0,4.0,1.0\n";

double ev_w(double e) { return constants::ev_to_angular_frequency(e); }

} // namespace

TEST_CASE("table loads, interpolates linearly, keeps endpoints exact") {
    std::istringstream in(kSmallTable);
    const auto t = load_dielectric_table(in, "small");
    CHECK(t.id == "small");
    REQUIRE(t.energy_ev.size() == 3);
    CHECK(permittivity(t, ev_w(0.0)) == complexd(2.0, 0.0));
    CHECK(permittivity(t, ev_w(2.0)) == complexd(4.0, 1.0));
    const auto mid = permittivity(t, ev_w(0.5));
    CHECK(mid.real() == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(mid.imag() == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(t.omega_min() == doctest::Approx(0.0));
    CHECK(t.omega_max() == doctest::Approx(ev_w(2.0)).epsilon(1e-15));
}

TEST_CASE("no extrapolation outside the table") {
    std::istringstream in(kSmallTable);
    const auto t = load_dielectric_table(in);
    CHECK_THROWS_AS((void)permittivity(t, ev_w(2.0) * 1.0000001), RangeError);
    CHECK_THROWS_AS((void)permittivity(t, -1.0), DomainError);
}

TEST_CASE("parse failures carry 1-based line numbers") {
    auto expect_line = [](const char* text, long line) {
        std::istringstream in(text);
        try {
            (void)load_dielectric_table(in);
            FAIL_CHECK("expected ParseError for: " << text);
        } catch (const ParseError& e) {
            CHECK(e.line == line);
        }
    };
    expect_line("0.0,1.0,0.0\nnot,numeric,row\n", 2);
    expect_line("0.0,1.0,0.0\n1.0,1.0\n", 2);                  // missing column
    expect_line("# c\n1.0,1.0,0.0\n0.5,1.0,0.0\n", 3);         // non-increasing energy
    expect_line("0.0,1.0,0.0\n1.0,1.0,-0.25\n", 2);            // negative Im eps
    expect_line("0.0,1.0,0.0\n", 1);                           // fewer than 2 rows
}

TEST_CASE("missing file is a FileError") {
    CHECK_THROWS_AS((void)load_dielectric_table_file("/nonexistent/nowhere.csv"), FileError);
}

TEST_CASE("Lorentz model permittivity and validation") {
    LorentzModel m;
    m.eps_inf = 1.0;
    const double w0 = ev_w(11.67), g = ev_w(0.4);
    const double f = 96.6941 * ev_w(1.0) * ev_w(1.0);
    m.oscillators.push_back({f, w0, g});

    // Hand-evaluated eps(w) = 1 + f / (w0^2 - w^2 - i g w).
    const double w = ev_w(2.2875);
    const complexd want = 1.0 + f / complexd(w0 * w0 - w * w, -g * w);
    const auto got = permittivity(m, w);
    CHECK(std::abs(got - want) <= 1e-14 * std::abs(want));
    CHECK(got.imag() > 0.0);

    // Static limit eps(0) = eps_inf + f / w0^2.
    CHECK(permittivity(m, 0.0).real() ==
          doctest::Approx(1.0 + f / (w0 * w0)).epsilon(1e-14));

    LorentzModel bad = m;
    bad.oscillators[0].gamma = 0.0;
    CHECK_THROWS_AS(validate(bad), DomainError);
    bad = m;
    bad.oscillators[0].f = -1.0;
    CHECK_THROWS_AS(validate(bad), DomainError);
    bad = m;
    bad.oscillators[0].omega0 = 0.0;
    CHECK_THROWS_AS(validate(bad), DomainError);
}

TEST_CASE("Kramers-Kronig imaginary-axis transform against the analytic Lorentz form") {
    // Build a dense table from a damped Lorentz oscillator, then compare the
    // trapezoid KK transform with the closed form
    // eps(i xi) = 1 + f / (w0^2 + xi^2 + g xi).
    LorentzModel m;
    const double w0 = ev_w(11.67), g = ev_w(0.4);
    const double f = 96.6941 * ev_w(1.0) * ev_w(1.0);
    m.oscillators.push_back({f, w0, g});

    std::ostringstream rows;
    for (int k = 0; k <= 5000; ++k) {
        const double e = 0.02 * k;  // 0..100 eV
        const auto eps = permittivity(m, ev_w(e));
        rows << e << "," << eps.real() << "," << eps.imag() << "\n";
    }
    std::istringstream in(rows.str());
    const auto t = load_dielectric_table(in, "lorentz-dense");

    for (double xi_ev : {0.5, 2.0, 10.0}) {
        const double xi = ev_w(xi_ev);
        const double closed = 1.0 + f / (w0 * w0 + xi * xi + g * xi);
        const double kk = permittivity_imag_axis(t, xi);
        CAPTURE(xi_ev);
        CHECK(std::abs(kk - closed) / (closed - 1.0) <= 2e-3);
    }
}

TEST_CASE("stored imaginary-axis samples short-circuit the transform") {
    std::istringstream in(kSmallTable);
    auto t = load_dielectric_table(in);
    std::istringstream samples("1.0e15,1.8\n2.0e15,1.4\n3.0e15,1.2\n");
    load_imag_axis_samples(samples, t);
    CHECK(permittivity_imag_axis(t, 2.0e15) == doctest::Approx(1.4).epsilon(1e-14));
    CHECK(permittivity_imag_axis(t, 1.5e15) == doctest::Approx(1.6).epsilon(1e-14));
    CHECK_THROWS_AS((void)permittivity_imag_axis(t, 5.0e15), RangeError);
}

TEST_CASE("non-retarded Fresnel surface response") {
    const complexd eps(1.71, 0.05);
    const auto rp = fresnel_rp_nonret(eps);
    CHECK(std::abs(rp - (eps - 1.0) / (eps + 1.0)) <= 1e-15);
    CHECK_THROWS_AS((void)fresnel_rp_nonret(complexd(-1.0, 0.0)), PoleError);
}

TEST_CASE("medium id propagates through the variant") {
    std::istringstream in(kSmallTable);
    Medium med = load_dielectric_table(in, "argonish");
    CHECK(medium_id(med) == "argonish");
    LorentzModel m;
    m.id = "lorentz";
    CHECK(medium_id(Medium(m)) == "lorentz");
}
