#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <numbers>
#include <stdexcept>

#include "casimir/quadrature.hpp"

using namespace casimir::quad;

TEST_SUITE("quadrature") {

TEST_CASE("Gauss-Legendre is exact to degree 2n - 1") {
    for (int n : {1, 4, 7, 20}) {
        const auto r = gauss_legendre(n);
        double s = 0.0, w = 0.0;
        for (std::size_t i = 0; i < r.nodes.size(); ++i) {
            s += r.weights[i] * std::pow(r.nodes[i], 2 * n - 2);
            w += r.weights[i];
        }
        CHECK(w == doctest::Approx(2.0).epsilon(1e-14));
        CHECK(s == doctest::Approx(2.0 / (2 * n - 1)).epsilon(1e-13));
    }
}

TEST_CASE("composite Gauss-Kronrod with embedded Gauss weights") {
    const auto r = gauss_kronrod_composite(graded_breakpoints(1e-3, 4.0, 4.0, 40.0));
    double k = 0.0, g = 0.0;
    for (std::size_t i = 0; i < r.nodes.size(); ++i) {
        const double f = r.nodes[i] * std::exp(-r.nodes[i]);
        k += r.w_kronrod[i] * f;
        g += r.w_gauss[i] * f;
    }
    const double exact = 1.0 - 41.0 * std::exp(-40.0);
    CHECK(k == doctest::Approx(exact).epsilon(1e-14));
    CHECK(std::abs(g - exact) < 1e-8);
    CHECK(r.nodes.size() == 15 * r.panels);
}

TEST_CASE("graded breakpoints") {
    const auto b = graded_breakpoints(0.25, 2.0, 1.0, 4.0);
    const std::vector<double> expect{0.0, 0.25, 0.5, 1.0, 2.0, 3.0, 4.0};
    REQUIRE(b.size() == expect.size());
    for (std::size_t i = 0; i < b.size(); ++i) CHECK(b[i] == doctest::Approx(expect[i]));
    CHECK(graded_breakpoints(0.25, 2.0, 1.0, 4.0, 1).size() == 2 * (expect.size() - 1) + 1);
}

TEST_CASE("adaptive integration of an endpoint singularity") {
    const auto r = integrate_adaptive([](double x) { return 1.0 / std::sqrt(x); }, 0.0, 1.0, 1e-10, 0.0, 100000);
    CHECK(r.converged);
    CHECK(r.value[0] == doctest::Approx(2.0).epsilon(1e-9));
    const auto v = integrate_adaptive(
        [](double x) {
            Components c{};
            c[0] = std::sin(x);
            c[1] = std::cos(x);
            return c;
        },
        2, 0.0, std::numbers::pi, 1e-12, 0.0, 10000);
    CHECK(v.value[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(std::abs(v.value[1]) < 1e-12);
}

TEST_CASE("Chebyshev panel interpolates and integrates") {
    const double a = 1.0, b = 5.0;
    const int n = 24;
    std::vector<Components> vals;
    for (double x : ChebyshevPanel::nodes(a, b, n)) {
        Components c{};
        c[0] = std::exp(-x);
        vals.push_back(c);
    }
    const ChebyshevPanel p(a, b, n, 1, vals);
    for (double x : {1.0, 1.3, 2.71, 4.99, 5.0}) CHECK(p(x)[0] == doctest::Approx(std::exp(-x)).epsilon(1e-14));
    CHECK(p.integral()[0] == doctest::Approx(std::exp(-1.0) - std::exp(-5.0)).epsilon(1e-14));
}

TEST_CASE("double-double accumulation") {
    DoubleDouble s;
    s.add(1e16);
    s.add(1.0);
    s.add(-1e16);
    CHECK(s.value() == 1.0);
    DoubleDouble t;
    for (int i = 0; i < 1000000; ++i) t.add(0.1);
    CHECK(std::abs(t.value() - 100000.0) < 1e-9);
    const auto p = DoubleDouble{1.0, 1e-20} * 3.0;
    CHECK(p.hi == 3.0);
    CHECK(p.lo == doctest::Approx(3e-20));
    CHECK((DoubleDouble{1.0, 0.0} - DoubleDouble{1.0, -1e-30}).value() == doctest::Approx(1e-30));
}

TEST_CASE("parallel_for visits every index once") {
    setenv("LIFSHITZ_THREADS", "4", 1);
    CHECK(worker_count() == 4);
    std::vector<int> hits(1000, 0);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
    for (int h : hits) CHECK(h == 1);
    CHECK_THROWS_AS(parallel_for(10, [](std::size_t i) {
                        if (i == 7) throw std::runtime_error("boom");
                    }),
                    std::runtime_error);
    unsetenv("LIFSHITZ_THREADS");
}

}
