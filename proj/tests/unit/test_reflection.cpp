#include "doctest.h"

#include <cmath>

#include "casimir/constants.hpp"
#include "casimir/reflection.hpp"

using namespace casimir;
namespace cst = casimir::constants;

namespace {

Medium<double> nonlocal(double gamma) {
    Medium<double> m;
    m.omega_p = 91.2;
    m.v_tr = 0.01;
    m.v_l = 0.01;
    m.gamma = gamma;
    return m;
}

}  // namespace

TEST_SUITE("reflection") {

TEST_CASE("local limit matches the Fresnel coefficients") {
    const double a = 1e-6;
    Medium<double> m;
    m.omega_p = 91.2;
    m.gamma = 0.3;
    for (double x : {0.01, 0.5, 3.0})
        for (double yf : {1.0, 1.5, 10.0}) {
            const double y = x * yf;
            const double xi = x * cst::c / (2 * a);
            const double kp = std::sqrt(y * y - x * x) / (2 * a);
            const double eps = 1.0 + m.omega_p * m.omega_p / (x * (x + m.gamma));
            const auto f = fresnel_local(xi, kp, eps);
            const auto r = reflection(x, y, m);
            CHECK(r.r_tm == doctest::Approx(f.r_tm).epsilon(1e-12));
            CHECK(r.r_te == doctest::Approx(f.r_te).epsilon(1e-12));
        }
}

TEST_CASE("complements are 1 - r_tm and 1 + r_te") {
    const auto m = nonlocal(0.02);
    for (double x : {1e-3, 0.1, 2.0}) {
        const auto r = reflection(x, 2.5, m);
        CHECK(r.c_tm == doctest::Approx(1.0 - r.r_tm).epsilon(1e-12));
        CHECK(r.c_te == doctest::Approx(1.0 + r.r_te).epsilon(1e-12));
        CHECK(r.r_tm <= 1.0);
        CHECK(r.r_te >= -1.0);
    }
}

TEST_CASE("ideal metal reflects perfectly") {
    Medium<double> m;
    m.ideal = true;
    const auto r = reflection_any(0.0, 1.0, m);
    CHECK(r.r_tm == 1.0);
    CHECK(r.r_te == -1.0);
    CHECK(r.c_tm == 0.0);
}

TEST_CASE("zero-frequency plasma TE coefficient") {
    Medium<double> m;
    m.omega_p = 9.12;
    for (double y : {0.1, 1.0, 10.0}) {
        const double k = std::sqrt(y * y + m.omega_p * m.omega_p);
        CHECK(static_reflection(y, m).r_te == doctest::Approx((y - k) / (y + k)).epsilon(1e-13));
        CHECK(static_reflection(y, m).r_tm == 1.0);
    }
}

TEST_CASE("zero frequency is the x -> 0 limit") {
    const auto m = nonlocal(3.5e-4);
    for (double y : {0.5, 5.0}) {
        const auto s = static_reflection(y, m);
        const auto r = reflection(1e-12, y, m);
        CHECK(r.r_tm == doctest::Approx(s.r_tm).epsilon(1e-6));
        CHECK(r.r_te == doctest::Approx(s.r_te).epsilon(1e-6));
    }
}

TEST_CASE("static beta and delta and their first-order forms") {
    const auto m = nonlocal(3.5e-4);
    const double beta = static_beta(m), delta = static_delta(m);
    CHECK(beta == doctest::Approx(3.5e-4 * 0.01 / (91.2 * 91.2)));
    CHECK(delta == doctest::Approx(3.5e-4 / (0.01 * 91.2 * 91.2)));
    const double y = 0.7;
    CHECK(r_tm_static(y, m, Order::FirstOrder) == doctest::Approx(1.0 - 2.0 * beta * y));
    CHECK(r_te_static(y, m, Order::FirstOrder) == doctest::Approx(-1.0 + 2.0 * std::sqrt(delta * y)));
    CHECK(r_tm_static(y, m) == doctest::Approx(r_tm_static(y, m, Order::FirstOrder)).epsilon(1e-10));
    CHECK(r_te_static(y, m) == doctest::Approx(r_te_static(y, m, Order::FirstOrder)).epsilon(1e-4));
}

TEST_CASE("local Drude TE vanishes at zero frequency") {
    Medium<double> m;
    m.omega_p = 91.2;
    m.gamma = 0.01;
    CHECK(static_reflection(1.0, m).r_te == doctest::Approx(0.0));
}

TEST_CASE("thermal shift agrees with direct subtraction") {
    const auto at_T = nonlocal(2e-3), at_zero = nonlocal(1e-3);
    for (double x : {0.0, 1e-4, 0.05, 1.0}) {
        const double y = std::max(1.3 * x, 0.8);
        const auto d = thermal_delta_r(x, y, at_T, at_zero);
        const auto r1 = reflection_any(x, y, at_T), r0 = reflection_any(x, y, at_zero);
        CHECK(d.r_tm == doctest::Approx(r1.r_tm - r0.r_tm).epsilon(1e-7).scale(1e-300));
        CHECK(d.r_te == doctest::Approx(r1.r_te - r0.r_te).epsilon(1e-7).scale(1e-300));
    }
    const auto same = thermal_delta_r(0.1, 1.0, at_zero, at_zero);
    CHECK(same.r_tm == 0.0);
    CHECK(same.r_te == 0.0);
    auto other = at_T;
    other.omega_p = 10.0;
    CHECK_THROWS_AS(thermal_delta_r(0.1, 1.0, other, at_zero), DomainError);
}

TEST_CASE("derivative at zero frequency") {
    const auto m = nonlocal(3.5e-4);
    const double y = 2.0, h = 1e-10;
    const double fd = (reflection(h, y, m).r_tm - static_reflection(y, m).r_tm) / h;
    CHECK(fd == doctest::Approx(r_prime_static(y, m, Polarization::TM)).epsilon(1e-3));
    CHECK_THROWS_AS(r_prime_static(y, nonlocal(0.0), Polarization::TE), DomainError);
}

TEST_CASE("domain") {
    const auto m = nonlocal(0.0);
    CHECK_THROWS_AS(reflection(0.0, 1.0, m), DomainError);
    CHECK_THROWS_AS(reflection(2.0, 1.0, m), DomainError);
    CHECK_THROWS_AS(fresnel_local(1.0, 1.0, 0.5), DomainError);
}

}
