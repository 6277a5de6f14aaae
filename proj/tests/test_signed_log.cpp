#include "lacuna/signed_log.hpp"

#include <cmath>

#include "doctest.h"

using lacuna::NumericError;
using lacuna::SignedLog;

TEST_CASE("construction and round trip") {
    CHECK(SignedLog::from_real(0.0).is_zero());
    CHECK(SignedLog::from_real(-0.0).is_zero());
    CHECK(SignedLog::from_real(3.5).to_real() == doctest::Approx(3.5).epsilon(1e-15));
    CHECK(SignedLog::from_real(-1e-300).to_real() == doctest::Approx(-1e-300).epsilon(1e-13));
    CHECK(SignedLog::from_log(1, 0.0).to_real() == 1.0);
    CHECK(SignedLog::from_log(-7, 2.0).sign == -1);  // sign normalized
    CHECK(SignedLog::from_log(0, 123.0).is_zero());
    CHECK_THROWS_AS(SignedLog::from_real(std::nan("")), NumericError);
}

TEST_CASE("multiplication and division") {
    auto a = SignedLog::from_real(-6.0);
    auto b = SignedLog::from_real(1.5);
    CHECK((a * b).to_real() == doctest::Approx(-9.0).epsilon(1e-15));
    CHECK((a / b).to_real() == doctest::Approx(-4.0).epsilon(1e-15));
    CHECK((a * SignedLog::zero()).is_zero());
    CHECK_THROWS_AS(a / SignedLog::zero(), NumericError);
    // huge magnitudes never leave the log domain
    auto big = SignedLog::from_log(1, 1e16);
    CHECK((big * big).log_mag == doctest::Approx(2e16));
}

TEST_CASE("signed addition") {
    auto a = SignedLog::from_real(3.0);
    auto b = SignedLog::from_real(4.0);
    CHECK((a + b).to_real() == doctest::Approx(7.0).epsilon(1e-15));
    CHECK((a - b).to_real() == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK((b - a).to_real() == doctest::Approx(1.0).epsilon(1e-14));
    CHECK((a - a).is_zero());  // exact cancellation
    CHECK((a + SignedLog::zero()).to_real() == doctest::Approx(3.0));
    CHECK((SignedLog::zero() + a).to_real() == doctest::Approx(3.0));

    auto big = SignedLog::from_log(1, 5e15);
    auto big2 = big + big;
    CHECK(big2.log_mag == doctest::Approx(5e15 + std::log(2.0)));
    // tiny + huge: huge dominates without underflow trouble
    auto tiny = SignedLog::from_log(-1, -5e15);
    CHECK((big + tiny).log_mag == doctest::Approx(5e15));
    CHECK((big + tiny).sign == 1);
}

TEST_CASE("ordering matches the represented reals") {
    auto n2 = SignedLog::from_real(-2.0);
    auto n1 = SignedLog::from_real(-1.0);
    auto z = SignedLog::zero();
    auto p1 = SignedLog::from_real(1.0);
    auto p2 = SignedLog::from_real(2.0);
    CHECK(n2 < n1);
    CHECK(n1 < z);
    CHECK(z < p1);
    CHECK(p1 < p2);
    CHECK(p2 > n2);
    CHECK(z <= z);
    CHECK(p1 >= p1);
    CHECK_FALSE(p2 < p1);
}

TEST_CASE("integer powers") {
    auto a = SignedLog::from_real(-2.0);
    CHECK(lacuna::pow_int(a, 3).to_real() == doctest::Approx(-8.0).epsilon(1e-15));
    CHECK(lacuna::pow_int(a, 2).to_real() == doctest::Approx(4.0).epsilon(1e-15));
    CHECK(lacuna::pow_int(a, 0).to_real() == 1.0);
    CHECK(lacuna::pow_int(SignedLog::zero(), 5).is_zero());
    CHECK_THROWS_AS(lacuna::pow_int(SignedLog::zero(), -1), NumericError);
    // 2^1000 in log form, far outside double range
    CHECK(lacuna::pow_int(SignedLog::from_real(2.0), 1000).log_mag ==
          doctest::Approx(1000.0 * std::log(2.0)));
}
