#include "doctest.h"

#include <boost/math/special_functions/gamma.hpp>
#include <boost/math/special_functions/zeta.hpp>
#include <cmath>
#include <numbers>

#include "casimir/errors.hpp"
#include "casimir/specfun.hpp"

using namespace casimir;
using namespace casimir::specfun;

TEST_SUITE("specfun") {

TEST_CASE("zeta at even integers") {
    const double pi = std::numbers::pi;
    CHECK(zeta(2.0).value == doctest::Approx(pi * pi / 6).epsilon(1e-15));
    CHECK(zeta(4.0).value == doctest::Approx(std::pow(pi, 4) / 90).epsilon(1e-15));
}

TEST_CASE("zeta against boost") {
    for (double s : {1.5, 2.5, 3.0, 1.01, 7.25, 30.0}) {
        const auto z = zeta(s);
        CHECK(z.value == doctest::Approx(boost::math::zeta(s)).epsilon(1e-14));
        CHECK(z.abs_err < 1e-13 * z.value);
    }
    CHECK(zeta(3.0).value == doctest::Approx(1.2020569031595942).epsilon(1e-15));
}

TEST_CASE("reflected zeta") {
    // zeta(-1/2) = -zeta(3/2) / (4 pi)
    CHECK(zeta_reflected(-0.5).value == doctest::Approx(-zeta(1.5).value / (4 * std::numbers::pi)).epsilon(1e-14));
    CHECK(zeta_reflected(-1.5).value == doctest::Approx(boost::math::zeta(-1.5)).epsilon(1e-13));
    CHECK(zeta_reflected(0.5).value == doctest::Approx(-1.4603545088095868).epsilon(1e-15));
}

TEST_CASE("Bose integrals") {
    CHECK(bose_integral(2.0).value == doctest::Approx(2.0 * zeta(3.0).value).epsilon(1e-14));
    CHECK(bose_integral(1.5).value == doctest::Approx(boost::math::tgamma(2.5) * zeta(2.5).value).epsilon(1e-14));
    CHECK(bose_integral(0.5).value == doctest::Approx(0.5 * std::sqrt(std::numbers::pi) * zeta(1.5).value).epsilon(1e-14));
}

TEST_CASE("exponential weight") {
    CHECK(exp_weight_integral().value == doctest::Approx(1.0 / 24.0).epsilon(1e-15));
    CHECK(exp_weight_moment(1.0).value == doctest::Approx(1.0 / 24.0).epsilon(1e-14));
}

TEST_CASE("polylogarithm of order one half") {
    double direct = 0.0;
    for (int n = 200; n >= 1; --n) direct += std::pow(0.5, n) / std::sqrt(n);
    CHECK(polylog_half(0.5).value == doctest::Approx(direct).epsilon(1e-14));
    for (double tau : {3.0, 0.2, 1e-3})
        CHECK(polylog_half_exp(tau).value == doctest::Approx(polylog_half(std::exp(-tau)).value).epsilon(1e-10));
    // sqrt(pi / tau) + zeta(1/2) + O(tau)
    const double tau = 1e-6;
    CHECK(polylog_half_exp(tau).value - std::sqrt(std::numbers::pi / tau) ==
          doctest::Approx(zeta_reflected(0.5).value).epsilon(1e-5));
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(zeta(1.0), DomainError);
    CHECK_THROWS_AS(zeta(0.5), DomainError);
    CHECK_THROWS_AS(zeta_reflected(0.25), DomainError);
    CHECK(std::abs(zeta_reflected(-2.0).value) < 1e-15);
    CHECK_THROWS_AS(bose_integral(0.0), DomainError);
    CHECK_THROWS_AS(polylog_half(1.0), DomainError);
    CHECK_THROWS_AS(polylog_half_exp(0.0), DomainError);
}

}
