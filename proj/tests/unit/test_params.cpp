#include "doctest.h"

#include <cmath>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/params.hpp"

using namespace casimir;
namespace cst = casimir::constants;

TEST_SUITE("params") {

TEST_CASE("tau and temperature are inverse maps") {
    for (double a : {1e-8, 1e-6, 3e-5})
        for (double T : {1e-3, 1.0, 300.0}) CHECK(temperature_for_tau(tau_for(a, T), a) == doctest::Approx(T).epsilon(1e-14));
    // 4 pi k_B T a / (hbar c) at 1 um, 1 K
    CHECK(tau_for(1e-6, 1.0) == doctest::Approx(5.4878e-3).epsilon(1e-4));
}

TEST_CASE("dimensionless state of the gold-like perfect lattice") {
    const auto mat = gold::perfect_lattice();
    const StatePoint st(1e-6, 2.0);
    const auto ds = to_dimensionless(st, mat);
    const double wp = 9.0 * cst::e_charge / cst::hbar;
    CHECK(ds.omega_p_t == doctest::Approx(2e-6 * wp / cst::c).epsilon(1e-14));
    CHECK(ds.v_tr_t == doctest::Approx(0.01));
    CHECK(ds.gamma_t == doctest::Approx(2e-6 * gold::b * 4.0 / cst::c).epsilon(1e-14));
    CHECK(ds.gamma_zero_t == 0.0);
    CHECK(ds.b_tt * ds.tau * ds.tau == doctest::Approx(ds.gamma_t).epsilon(1e-13));
    const auto back = from_dimensionless(ds, mat);
    CHECK(back.a == doctest::Approx(1e-6).epsilon(1e-14));
    CHECK(back.T == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("defect lattice keeps gamma0 at every temperature") {
    const auto mat = gold::defect_lattice();
    CHECK(gamma_at(mat, 0.0) == gold::gamma0);
    CHECK(gamma_at(mat, 3.0) == gold::gamma0);
    const auto ds = to_dimensionless(StatePoint(1e-6, 1.0), mat);
    CHECK(ds.gamma_t == ds.gamma_zero_t);
    CHECK(ds.gamma_zero_t == doctest::Approx(3.5358e-4).epsilon(1e-4));
}

TEST_CASE("b from gamma0 at T0") {
    CHECK(gold::b * gold::T0 * gold::T0 == doctest::Approx(gold::gamma0));
    CHECK(gamma_at(gold::perfect_lattice(), gold::T0) == doctest::Approx(gold::gamma0));
}

TEST_CASE("invalid inputs") {
    CHECK_THROWS_AS(Material(0.0, ZeroRelaxation{}, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(Material(1e16, ZeroRelaxation{}, cst::c, 0.0), DomainError);
    CHECK_THROWS_AS(Material(1e16, PerfectLattice{-1.0}, 0.0, 0.0), DomainError);
    CHECK_THROWS_AS(StatePoint(0.0, 1.0), DomainError);
    CHECK_THROWS_AS(StatePoint(1e-6, -1.0), DomainError);
    CHECK_THROWS_AS(parse_model("metal"), DomainError);
    CHECK_THROWS_AS(gamma_at(gold::perfect_lattice(), -1.0), DomainError);
}

TEST_CASE("model names round trip") {
    for (auto m : {ResponseModel::IdealMetal, ResponseModel::LocalDrude, ResponseModel::Plasma,
                   ResponseModel::NonlocalDrude})
        CHECK(parse_model(model_name(m)) == m);
    CHECK(relaxation_name(PerfectLattice{1.0}) == "perfect");
    CHECK(relaxation_name(DefectLattice{1.0}) == "defect");
    CHECK(relaxation_name(ZeroRelaxation{}) == "zero");
}

}
