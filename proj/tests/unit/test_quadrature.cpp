#include <doctest.h>

#include <cmath>
#include <limits>

#include "srfid/quadrature.hpp"

using namespace srfid;

TEST_CASE("polynomial and trigonometric exact values") {
    const auto r1 = quad::integrate([](double x) { return x * x; }, 0.0, 1.0);
    CHECK(r1.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));
    const auto r2 = quad::integrate([](double x) { return std::sin(x); }, 0.0,
                                    3.141592653589793);
    CHECK(r2.value == doctest::Approx(2.0).epsilon(1e-13));
    CHECK(r2.error <= 1e-10 * 2.0 + 1e-12 * 2.0);
}

TEST_CASE("Gaussian over a wide window") {
    const auto r = quad::integrate([](double t) { return std::exp(-t * t); }, -8.0, 8.0);
    CHECK(r.value == doctest::Approx(std::sqrt(3.141592653589793)).epsilon(1e-13));
}

TEST_CASE("oscillatory integrand with many periods") {
    // int_0^40 exp(-t/10) cos(7t) dt = [a/(a^2+b^2)] (1 - e^(-40a)(cos 280 - ...)),
    // done exactly: int e^(-at) cos(bt) = e^(-at)(b sin bt - a cos bt)/(a^2+b^2).
    const double a = 0.1, b = 7.0;
    auto anti = [&](double t) {
        return std::exp(-a * t) * (b * std::sin(b * t) - a * std::cos(b * t)) / (a * a + b * b);
    };
    const double want = anti(40.0) - anti(0.0);
    const auto r =
        quad::integrate([&](double t) { return std::exp(-a * t) * std::cos(b * t); }, 0.0, 40.0);
    CHECK(r.value == doctest::Approx(want).epsilon(1e-11));
}

TEST_CASE("reversed endpoints flip the sign") {
    const auto fwd = quad::integrate([](double x) { return x; }, 0.0, 2.0);
    const auto rev = quad::integrate([](double x) { return x; }, 2.0, 0.0);
    CHECK(fwd.value == doctest::Approx(2.0).epsilon(1e-14));
    CHECK(rev.value == doctest::Approx(-2.0).epsilon(1e-14));
}

TEST_CASE("invalid requests are rejected") {
    CHECK_THROWS_AS(quad::integrate([](double x) { return x; }, 0.0,
                                    std::numeric_limits<double>::infinity()),
                    DomainError);
    CHECK_THROWS_AS(quad::integrate([](double x) { return x; }, 0.0, 1.0, 0.0, 0.0),
                    DomainError);
}

TEST_CASE("non-integrable singularity raises ConvergenceError with an estimate") {
    try {
        (void)quad::integrate([](double x) { return 1.0 / x; }, 0.0, 1.0);
        FAIL("expected ConvergenceError");
    } catch (const ConvergenceError& e) {
        CHECK(e.error_estimate > 0.0);
    }
}
