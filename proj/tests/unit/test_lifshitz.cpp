#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include "casimir/constants.hpp"
#include "casimir/errors.hpp"
#include "casimir/specfun.hpp"
#include "casimir/thermal.hpp"

using namespace casimir;
namespace cst = casimir::constants;

namespace {

const double pi = std::numbers::pi;
const double hc = cst::hbar * cst::c;

double ideal_energy(double a) { return -pi * pi * hc / (720.0 * a * a * a); }

// low-temperature expansion of the ideal-metal correction, exponentially small remainder
double ideal_delta_f(double a, double T) {
    const double kT = cst::k_B * T;
    return -specfun::zeta(3.0).value * kT * kT * kT / (2 * pi * hc * hc) + pi * pi * std::pow(kT, 4) * a / (45 * hc * hc * hc);
}

double ideal_entropy(double a, double T) {
    const double k3 = std::pow(cst::k_B, 3);
    return 3 * specfun::zeta(3.0).value * k3 * T * T / (2 * pi * hc * hc) -
           4 * pi * pi * k3 * cst::k_B * T * T * T * a / (45 * hc * hc * hc);
}

}  // namespace

TEST_SUITE("lifshitz") {

TEST_CASE("ideal metal energy at zero temperature") {
    const QuadratureConfig cfg;
    for (double a : {1e-8, 1e-7, 1e-6}) {
        const auto E = zero_t_energy(a, gold::perfect_lattice(), ResponseModel::IdealMetal, cfg);
        CHECK(E.value == doctest::Approx(ideal_energy(a)).epsilon(1e-10));
        CHECK(E.err_est < 1e-10 * std::abs(E.value));
    }
}

TEST_CASE("ideal metal free energy in the classical limit") {
    const QuadratureConfig cfg;
    const double a = 1e-5, T = 300.0;
    const auto F = free_energy(StatePoint(a, T), gold::perfect_lattice(), ResponseModel::IdealMetal, cfg);
    CHECK(F.value == doctest::Approx(-cst::k_B * T * specfun::zeta(3.0).value / (8 * pi * a * a)).epsilon(1e-12));
}

TEST_CASE("ideal metal thermal correction and entropy at low temperature") {
    const QuadratureConfig cfg;
    const auto mat = gold::perfect_lattice();
    const double a = 1e-6;
    for (double T : {1.0, 10.0}) {
        const auto d = implicit_correction(StatePoint(a, T), mat, ResponseModel::IdealMetal, cfg);
        CHECK(d.value == doctest::Approx(ideal_delta_f(a, T)).epsilon(1e-9));
        const auto S = entropy_numeric(StatePoint(a, T), mat, ResponseModel::IdealMetal, cfg);
        CHECK(S.value == doctest::Approx(ideal_entropy(a, T)).epsilon(1e-6));
    }
}

TEST_CASE("every model agrees with the ideal metal to leading order at large separation") {
    const QuadratureConfig cfg;
    for (auto m : {ResponseModel::Plasma, ResponseModel::LocalDrude, ResponseModel::NonlocalDrude}) {
        const auto E = zero_t_energy(1e-5, gold::perfect_lattice(), m, cfg);
        CHECK(E.value / ideal_energy(1e-5) == doctest::Approx(1.0).epsilon(0.02));
        CHECK(E.value / ideal_energy(1e-5) < 1.0);
    }
}

TEST_CASE("Phi at zero frequency is -zeta(3) per polarization") {
    const QuadratureConfig cfg;
    const auto ds = to_dimensionless(StatePoint(1e-6, 1.0), gold::perfect_lattice());
    const double z3 = specfun::zeta(3.0).value;
    for (auto m : {ResponseModel::IdealMetal, ResponseModel::NonlocalDrude}) {
        const auto p = phi(0.0, ds, m, PhiMode::ZeroT, cfg);
        CHECK(p.tm == doctest::Approx(-z3).epsilon(1e-12));
        CHECK(p.te == doctest::Approx(-z3).epsilon(1e-12));
    }
    // the plasma TE mode only partly reflects at zero frequency
    CHECK(phi(0.0, ds, ResponseModel::Plasma, PhiMode::ZeroT, cfg).te > -z3);
    CHECK(std::abs(phi(45.0, ds, ResponseModel::NonlocalDrude, PhiMode::ZeroT, cfg).total()) < 1e-16);
}

TEST_CASE("interpolated far-field sum matches direct summation") {
    QuadratureConfig cfg;
    cfg.exact_terms = 16;
    const StatePoint st(1e-6, 10.0);
    const auto mat = gold::perfect_lattice();
    const auto interp = free_energy(st, mat, ResponseModel::NonlocalDrude, cfg);
    cfg.interpolate = false;
    const auto direct = free_energy(st, mat, ResponseModel::NonlocalDrude, cfg);
    CHECK(interp.value == doctest::Approx(direct.value).epsilon(1e-13));
    CHECK(interp.panels > 0);
    CHECK(direct.panels == 0);
}

TEST_CASE("fixed and adaptive truncation agree") {
    QuadratureConfig cfg;
    const StatePoint st(1e-7, 77.0);
    const auto mat = gold::perfect_lattice();
    const auto adaptive = free_energy(st, mat, ResponseModel::LocalDrude, cfg);
    cfg.l_max_policy = TruncationPolicy::fixed(adaptive.l_max_used + 200);
    const auto fixed = free_energy(st, mat, ResponseModel::LocalDrude, cfg);
    CHECK(fixed.value == doctest::Approx(adaptive.value).epsilon(1e-14));
    CHECK(adaptive.tail_bound < 1e-14 * std::abs(adaptive.value));
}

TEST_CASE("per-index contributions add up") {
    const QuadratureConfig cfg;
    const auto F = free_energy(StatePoint(1e-6, 300.0), gold::perfect_lattice(), ResponseModel::NonlocalDrude, cfg);
    double tm = F.l_terms_remainder.tm, te = F.l_terms_remainder.te;
    for (const auto& t : F.l_terms) {
        tm += t.tm;
        te += t.te;
    }
    CHECK(tm == doctest::Approx(F.tm).epsilon(1e-13));
    CHECK(te == doctest::Approx(F.te).epsilon(1e-13));
    CHECK(F.value == doctest::Approx(F.tm + F.te).epsilon(1e-15));
    CHECK(F.l_terms.front().tm < 0.0);
}

TEST_CASE("results do not depend on the worker count") {
    const QuadratureConfig cfg;
    const StatePoint st(1e-6, 0.5);
    const auto mat = gold::perfect_lattice();
    setenv("LIFSHITZ_THREADS", "1", 1);
    const auto one = free_energy(st, mat, ResponseModel::NonlocalDrude, cfg);
    const auto s1 = entropy_numeric(st, mat, ResponseModel::NonlocalDrude, cfg);
    setenv("LIFSHITZ_THREADS", "3", 1);
    const auto three = free_energy(st, mat, ResponseModel::NonlocalDrude, cfg);
    const auto s3 = entropy_numeric(st, mat, ResponseModel::NonlocalDrude, cfg);
    unsetenv("LIFSHITZ_THREADS");
    CHECK(one.value == three.value);
    CHECK(one.err_est == three.err_est);
    CHECK(s1.value == s3.value);
}

TEST_CASE("tolerance out of reach raises ConvergenceFailure") {
    QuadratureConfig cfg;
    cfg.rel_tol = 1e-18;
    cfg.abs_tol = 1e-300;
    cfg.max_nodes = 700;
    CHECK_THROWS_AS(free_energy(StatePoint(1e-6, 300.0), gold::perfect_lattice(), ResponseModel::NonlocalDrude, cfg),
                    ConvergenceFailure);
}

TEST_CASE("configuration and state checks") {
    QuadratureConfig cfg;
    cfg.rel_tol = -1.0;
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    const QuadratureConfig ok;
    CHECK_THROWS_AS(free_energy(StatePoint(1e-6, 0.0), gold::perfect_lattice(), ResponseModel::Plasma, ok), DomainError);
    CHECK_THROWS_AS(entropy_numeric(StatePoint(1e-6, 0.0), gold::perfect_lattice(), ResponseModel::Plasma, ok),
                    DomainError);
}

}
