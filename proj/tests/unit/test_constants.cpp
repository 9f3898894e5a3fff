#include <doctest.h>

#include <cmath>

#include "srfid/constants.hpp"

using namespace srfid;

TEST_CASE("mu0 eps0 c^2 = 1 to machine precision") {
    CHECK(std::abs(constants::mu0 * constants::eps0 * constants::c * constants::c - 1.0) <=
          1e-12);
}

TEST_CASE("hbar is h over 2 pi") {
    CHECK(constants::hbar == doctest::Approx(1.054571817e-34).epsilon(1e-9));
}

TEST_CASE("debye unit") {
    // 1 D = 1e-21 / c  C m ~ 3.33564e-30 C m.
    CHECK(constants::debye == doctest::Approx(3.33564e-30).epsilon(1e-5));
}

TEST_CASE("eV <-> angular frequency round trip") {
    const double ev = 2.2875;
    const double w = constants::ev_to_angular_frequency(ev);
    // hbar w = E : w = E e / hbar, checked at an optical-range energy.
    CHECK(w == doctest::Approx(3.4753e15).epsilon(1e-4));
    CHECK(constants::angular_frequency_to_ev(w) == doctest::Approx(ev).epsilon(1e-14));
    CHECK_THROWS_AS(constants::ev_to_angular_frequency(-1.0), DomainError);
    CHECK_THROWS_AS(constants::angular_frequency_to_ev(-1.0), DomainError);
}
