#include <doctest.h>

#include <cmath>
#include <limits>

#include "mmlink/special.hpp"
#include "oracles.hpp"

using namespace mmlink;

TEST_CASE("bessel_j0: pinned values across both evaluation regimes") {
    CHECK(bessel_j0(0.0) == 1.0);
    CHECK(std::abs(bessel_j0(1.0) - oracle::kJ0_1) <= 1e-13);
    CHECK(std::abs(bessel_j0(oracle::kJ0_first_zero_arg)) <= 1e-9);
    CHECK(std::abs(bessel_j0(5.0) - oracle::kJ0_5) <= 1e-13);
    CHECK(std::abs(bessel_j0(10.0) - oracle::kJ0_10) <= 1e-13);
    CHECK(std::abs(bessel_j0(16.9) - oracle::kJ0_16_9) <= 1e-12); // series side
    CHECK(std::abs(bessel_j0(17.1) - oracle::kJ0_17_1) <= 1e-12); // asymptotic side
    CHECK(std::abs(bessel_j0(25.0) - oracle::kJ0_25) <= 1e-12);
    CHECK(std::abs(bessel_j0(40.0) - oracle::kJ0_40) <= 1e-12);
    CHECK(std::abs(bessel_j0(50.0) - oracle::kJ0_50) <= 1e-12);
    CHECK(std::abs(bessel_j0(1.5707963267948966) - oracle::kJ0_half_pi) <= 1e-13);
}

TEST_CASE("bessel_j0: even, bounded, and rejects non-finite input") {
    for (double x : {0.3, 1.7, 5.5, 13.0, 24.25, 49.0}) {
        CHECK(bessel_j0(-x) == bessel_j0(x));
        CHECK(std::abs(bessel_j0(x)) <= 1.0);
    }
    CHECK(std::abs(bessel_j0(-17.1) - oracle::kJ0_17_1) <= 1e-12);
    CHECK_THROWS_AS(bessel_j0(std::numeric_limits<double>::quiet_NaN()), DomainError);
    CHECK_THROWS_AS(bessel_j0(std::numeric_limits<double>::infinity()), DomainError);
}

TEST_CASE("sine_integral: pinned values across both evaluation regimes") {
    CHECK(sine_integral(0.0) == 0.0);
    CHECK(std::abs(sine_integral(1.0) - oracle::kSi_1) <= 1e-12);
    CHECK(std::abs(sine_integral(3.14159265358979323846) - oracle::kSi_pi) <= 1e-12);
    CHECK(std::abs(sine_integral(16.0) - oracle::kSi_16) <= 1e-11);
    CHECK(std::abs(sine_integral(100.0) - oracle::kSi_100) <= 1e-10);
    // Small arguments feed the closed-form ICI factor at small b; keep them exact.
    CHECK(std::abs(sine_integral(0.08) - oracle::kSi_0_08) <= 1e-14);
    CHECK(std::abs(sine_integral(0.2) - oracle::kSi_0_2) <= 1e-14);
}

TEST_CASE("sine_integral: nondecreasing on [0, pi]") {
    double prev = 0.0;
    for (int i = 1; i <= 100; ++i) {
        const double z = 3.14159265358979323846 * i / 100.0;
        const double cur = sine_integral(z);
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("sine_integral: domain") {
    CHECK_THROWS_AS(sine_integral(-1.0), DomainError);
    CHECK_THROWS_AS(sine_integral(std::numeric_limits<double>::quiet_NaN()), DomainError);
}

TEST_CASE("sinc: pinned values and the removable singularity") {
    CHECK(sinc(0.0) == 1.0);
    CHECK(sinc(3.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(sinc(1.0) == doctest::Approx(0.0).epsilon(1e-15));
    CHECK(sinc(0.5) == doctest::Approx(0.63661977236758138).epsilon(1e-14));
    CHECK(sinc(-0.5) == sinc(0.5));
}

TEST_CASE("sinc: series branch agrees with the direct formula near the handoff") {
    // Points straddling the small-argument handoff; at each, compare against
    // the direct sin(pi x)/(pi x) evaluated in the test itself.
    const double kPi = 3.14159265358979323846;
    for (double x : {3.18e-5, 3.19e-5, 1.0e-6}) {
        const double direct = std::sin(kPi * x) / (kPi * x);
        CHECK(sinc(x) == doctest::Approx(direct).epsilon(1e-13));
    }
    CHECK_THROWS_AS(sinc(std::numeric_limits<double>::infinity()), DomainError);
}
