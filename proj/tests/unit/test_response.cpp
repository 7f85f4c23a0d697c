#include "doctest.h"

#include <cmath>

#include "casimir/constants.hpp"
#include "casimir/response.hpp"

using namespace casimir;
namespace cst = casimir::constants;

TEST_SUITE("response") {

TEST_CASE("without nonlocality both permittivities reduce to local Drude") {
    const Material mat(1.3e16, PerfectLattice{3e9}, 0.0, 0.0);
    const double T = 10.0, xi = 2e13;
    const auto p = nonlocal_imag_freq(xi, 5e6, T, mat);
    const double drude = 1.0 + 1.3e16 * 1.3e16 / (xi * (xi + 3e9 * T * T));
    CHECK(p.eps_tr == doctest::Approx(drude).epsilon(1e-15));
    CHECK(p.eps_l == doctest::Approx(drude).epsilon(1e-15));
}

TEST_CASE("transverse grows and longitudinal shrinks with k") {
    const auto mat = gold::perfect_lattice();
    const auto k0 = nonlocal_imag_freq(1e14, 0.0, 1.0, mat);
    const auto k1 = nonlocal_imag_freq(1e14, 1e7, 1.0, mat);
    CHECK(k1.eps_tr > k0.eps_tr);
    CHECK(k1.eps_l < k0.eps_l);
    CHECK(k0.eps_tr == doctest::Approx(k0.eps_l));
}

TEST_CASE("dimensionless form agrees with the dimensional one") {
    const auto mat = gold::perfect_lattice();
    const double a = 1e-6, T = 4.0;
    const auto ds = to_dimensionless(StatePoint(a, T), mat);
    const double x = 0.3, y = 1.7;
    const double xi = x * cst::c / (2.0 * a);
    const double kp = std::sqrt(y * y - x * x) / (2.0 * a);
    const auto dim = nonlocal_imag_freq(xi, kp, T, mat);
    const auto dl = nonlocal_dimensionless(x, y, ds, false);
    CHECK(dl.eps_tr == doctest::Approx(dim.eps_tr).epsilon(1e-12));
    CHECK(dl.eps_l == doctest::Approx(dim.eps_l).epsilon(1e-12));
}

TEST_CASE("real frequency continuation at xi = -i omega") {
    const auto mat = gold::perfect_lattice();
    const double omega = 5e14, kp = 2e6, T = 3.0;
    const auto p = nonlocal_real_freq(omega, kp, T, mat);
    const double g = gamma_at(mat, T), wp2 = mat.omega_p() * mat.omega_p();
    const std::complex<double> i(0.0, 1.0);
    const auto drude = wp2 / (omega * (omega + i * g));
    CHECK(std::abs(p.eps_tr - (1.0 - drude * (1.0 + i * mat.v_tr() * kp / omega))) < 1e-12 * std::abs(p.eps_tr));
    CHECK(std::abs(p.eps_l - (1.0 - drude / (1.0 + i * mat.v_l() * kp / omega))) < 1e-12 * std::abs(p.eps_l));
}

TEST_CASE("zero frequency is a pole") {
    const auto mat = gold::perfect_lattice();
    CHECK_THROWS_AS(nonlocal_imag_freq(0.0, 1.0, 1.0, mat), ZeroFrequency);
    CHECK_THROWS_AS(nonlocal_real_freq(0.0, 1.0, 1.0, mat), ZeroFrequency);
    CHECK_THROWS_AS(nonlocal_imag_freq(-1.0, 1.0, 1.0, mat), DomainError);
    Medium<double> m;
    m.omega_p = 10.0;
    CHECK_THROWS_AS(nonlocal_dimensionless(2.0, 1.0, m), DomainError);
}

TEST_CASE("media for each model") {
    const auto ds = to_dimensionless(StatePoint(1e-6, 2.0), gold::perfect_lattice());
    CHECK(medium_for(ResponseModel::IdealMetal, ds, TemperatureMode::FiniteT).ideal);
    const auto pl = medium_for(ResponseModel::Plasma, ds, TemperatureMode::FiniteT);
    CHECK(pl.gamma == 0.0);
    CHECK(pl.v_tr == 0.0);
    const auto nl = medium_for(ResponseModel::NonlocalDrude, ds, TemperatureMode::FiniteT);
    CHECK(nl.gamma == ds.gamma_t);
    CHECK(nl.v_l == ds.v_l_t);
    CHECK(medium_for(ResponseModel::LocalDrude, ds, TemperatureMode::ZeroT).gamma == 0.0);
    CHECK(has_explicit_temperature_dependence(ResponseModel::NonlocalDrude, ds));
    CHECK_FALSE(has_explicit_temperature_dependence(ResponseModel::Plasma, ds));
    const auto dd = to_dimensionless(StatePoint(1e-6, 2.0), gold::defect_lattice());
    CHECK_FALSE(has_explicit_temperature_dependence(ResponseModel::NonlocalDrude, dd));
}

}
